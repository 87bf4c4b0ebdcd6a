"""
Compiles a tile set into the two-variable formulas of the reduction.

Every formula uses only the variables ``x`` and ``y``, the binary letter
``lhd`` and unary letters. Conjunctions are right-nested in the order the
conjuncts are listed below. ``x preceq y`` is an abbreviation for
``Q(y) -> Q(x)`` and is expanded where it occurs.

In ``Move_1`` and ``Move_2`` the inner quantifiers rebind ``x`` and
``y``: ``forall x. (lhd(x,y) -> wall(x))`` speaks about a predecessor of
the outer ``y``, ``exists y. (lhd(y,x) & ...)`` about a predecessor of
the outer ``x`` and ``exists x. (lhd(x,y) & above(x))`` about a
predecessor of the outer ``y``. Every other occurrence refers to the
outer pair.
"""

from typing import Dict, List
import logging

from .exceptions import TileSetTooSmallError
from .syntax.formula import (And, Atom, Exists, Forall, Formula, Implies, Or,
                             conj, disj, iff, neg, to_positive)
from .tiles import TileSet

logger = logging.getLogger(__name__)

X, Y = 'x', 'y'
LHD = 'lhd'
UNARY_LETTERS = ['Q', "Q'", 'S', "S'", "S''", 'G', 'next', 'above', 'right',
                 'wall', 'floor']

DL_NAMES = ['Serial_lhd', 'Diag_N', 'Diag_Q', 'Diag_S', 'Diag_G', 'Agree_S',
            'Agree_G', 'Agree_lhd']
FRAW_NAMES = ['EM_W', 'Conn_1', 'Conn_2', 'Conn_3', 'Start_lhd', 'Move_1',
              'Move_2']
TILING_NAMES = ['T0', 'T1', 'T2']
PSI_NAMES = ['Agree_preceq', 'T3', 'T4', 'Refute_Q']
PHI, PSI = 'phi', 'psi'


def lhd(a: str, b: str) -> Formula:
    return Atom(LHD, (a, b))


def _unary(letter: str):
    def build(v: str) -> Formula:
        return Atom(letter, (v,))
    return build


Q = _unary('Q')
Q1 = _unary("Q'")
S = _unary('S')
S1 = _unary("S'")
S2 = _unary("S''")
G = _unary('G')
NEXT = _unary('next')
ABOVE = _unary('above')
RIGHT = _unary('right')
WALL = _unary('wall')
FLOOR = _unary('floor')


def P(k: int, v: str) -> Formula:
    return Atom(f'P{k}', (v,))


def forall_xy(body: Formula) -> Formula:
    return Forall(X, Forall(Y, body))


def preceq(a: str, b: str) -> Formula:
    """``a preceq b``, expanded to ``Q(b) -> Q(a)``."""
    return Implies(Q(b), Q(a))


def dl_conjuncts() -> Dict[str, Formula]:
    return {
        'Serial_lhd': Forall(X, Exists(Y, lhd(X, Y))),
        'Diag_N': forall_xy(Implies(lhd(X, Y), iff(Q(X), NEXT(Y)))),
        'Diag_Q': forall_xy(Implies(lhd(X, Y), iff(Q1(X), Q(Y)))),
        'Diag_S': forall_xy(Implies(lhd(X, Y),
                                    And(iff(S1(X), S(Y)), iff(S2(X), S1(Y))))),
        'Diag_G': forall_xy(Implies(lhd(X, Y), iff(S(X), G(Y)))),
        'Agree_S': forall_xy(Or(
            Implies(And(Q(X), S(Y)), Or(Q1(X), S1(Y))),
            Implies(And(Q(X), S1(Y)), Or(Q1(X), S2(Y))))),
        'Agree_G': forall_xy(Or(
            Implies(And(Q(X), G(Y)), Or(Q1(X), S(Y))),
            Implies(And(Q(X), S1(Y)), Or(Q1(X), S2(Y))))),
        'Agree_lhd': forall_xy(Implies(And(lhd(Y, X), S(X)), S(Y)))
    }


def fraw_conjuncts() -> Dict[str, Formula]:
    move_1 = forall_xy(Implies(
        Implies(conj(Forall(X, Implies(lhd(X, Y), WALL(X))), neg(WALL(Y)),
                     RIGHT(Y), Q(X)),
                Or(Q1(X), S2(Y))),
        Implies(conj(Exists(Y, And(lhd(Y, X), WALL(Y))), NEXT(X),
                     Exists(X, And(lhd(X, Y), ABOVE(X))), G(Y)),
                Or(Q(X), S(Y)))))
    move_2 = forall_xy(Implies(
        Implies(conj(neg(WALL(Y)), RIGHT(Y), Q(X)), Or(Q1(X), S2(Y))),
        Implies(conj(Exists(Y, And(lhd(Y, X), neg(WALL(Y)))), NEXT(X),
                     ABOVE(Y)),
                Or(Q(X), S1(Y)))))
    return {
        'EM_W': Forall(X, Or(WALL(X), neg(WALL(X)))),
        'Conn_1': Forall(X, And(Implies(FLOOR(X), neg(ABOVE(X))),
                                Implies(WALL(X), neg(RIGHT(X))))),
        'Conn_2': forall_xy(Implies(lhd(X, Y),
                                    And(Implies(RIGHT(X), ABOVE(Y)),
                                        Implies(WALL(X), FLOOR(Y))))),
        'Conn_3': Forall(X, And(Implies(ABOVE(X), S(X)),
                                Implies(RIGHT(X), S1(X)))),
        'Start_lhd': forall_xy(Implies(conj(lhd(X, Y), WALL(X), FLOOR(X)),
                                       RIGHT(Y))),
        'Move_1': move_1,
        'Move_2': move_2
    }


def _exactly_one(ts: TileSet) -> Formula:
    options = []
    for i in range(len(ts)):
        others = [neg(P(j, X)) for j in range(len(ts)) if j != i]
        options.append(conj(P(i, X), *others))
    return Forall(X, disj(*options))


def _mismatch(ts: TileSet, vertical: bool) -> Formula:
    """
    For each ``t_i`` the neighbors that may not follow it: the ones whose
    left (or down) edge differs from the right (or up) edge of ``t_i``.
    An empty set of forbidden neighbors gives bottom as premise.
    """
    step = ABOVE if vertical else RIGHT
    front = S1 if vertical else S2
    parts = []
    for t in ts:
        if vertical:
            forbidden = [P(u.id, Y) for u in ts if t.up != u.down]
        else:
            forbidden = [P(u.id, Y) for u in ts if t.right != u.left]
        parts.append(Implies(
            disj(*forbidden, allow_empty=True),
            Implies(conj(step(Y), Q(X), P(t.id, X)), Or(Q1(X), front(Y)))))
    return forall_xy(conj(*parts))


def tiling_conjuncts(ts: TileSet) -> Dict[str, Formula]:
    return {
        'T0': _exactly_one(ts),
        'T1': _mismatch(ts, vertical=False),
        'T2': _mismatch(ts, vertical=True)
    }


def build_dl() -> Formula:
    return conj(*dl_conjuncts().values())


def build_fraw() -> Formula:
    return conj(*fraw_conjuncts().values())


def build_grid() -> Formula:
    return And(build_dl(), build_fraw())


def build_tiling(ts: TileSet) -> Formula:
    return conj(*tiling_conjuncts(ts).values())


def build_refute() -> Formula:
    return forall_xy(Implies(conj(lhd(X, Y), WALL(X), FLOOR(X), Q(X)),
                             Or(Q1(X), S2(Y))))


def build_phi(ts: TileSet) -> Formula:
    logger.debug(f'Building phi for {len(ts)} tile type(s).')
    return Implies(And(build_grid(), build_tiling(ts)), build_refute())


def _check_psi_size(ts: TileSet):
    if len(ts) < 2:
        raise TileSetTooSmallError(len(ts), 2)


def psi_conjuncts(ts: TileSet) -> Dict[str, Formula]:
    _check_psi_size(ts)
    return {
        'Agree_preceq': forall_xy(Implies(lhd(X, Y), preceq(X, Y))),
        'T3': Forall(X, Implies(And(WALL(X), FLOOR(X)), P(0, X))),
        'T4': Exists(X, Forall(Y, Implies(And(preceq(X, Y), WALL(Y)),
                                          P(1, Y)))),
        'Refute_Q': Exists(X, Implies(Q(X), Q1(X)))
    }


def build_psi(ts: TileSet) -> Formula:
    extra = psi_conjuncts(ts)
    logger.debug(f'Building psi for {len(ts)} tile type(s).')
    grid = And(build_grid(), extra['Agree_preceq'])
    tiling = conj(build_tiling(ts), extra['T3'], extra['T4'])
    return Implies(And(grid, tiling), Or(build_refute(), extra['Refute_Q']))


def build_phi_positive(ts: TileSet) -> Formula:
    return to_positive(build_phi(ts))


def build_psi_positive(ts: TileSet) -> Formula:
    return to_positive(build_psi(ts))


def conjuncts(ts: TileSet, mode: str = PHI) -> Dict[str, Formula]:
    """
    The named pieces of the reduction in listing order: the conjuncts of
    the grid and tiling parts followed by ``Refute``, and in ``psi`` mode
    also ``Agree_preceq``, ``T3``, ``T4`` and ``Refute_Q``.
    """
    if mode not in (PHI, PSI):
        raise ValueError(f'Unknown mode "{mode}".')
    out = dict(dl_conjuncts())
    out.update(fraw_conjuncts())
    out.update(tiling_conjuncts(ts))
    out['Refute'] = build_refute()
    if mode == PSI:
        out.update(psi_conjuncts(ts))
    return out


def conjunct_names(mode: str = PHI) -> List[str]:
    names = DL_NAMES + FRAW_NAMES + TILING_NAMES + ['Refute']
    return names + PSI_NAMES if mode == PSI else names


def build_cd() -> Formula:
    """The constant-domain formula ``forall x. (P(x) | p) -> (forall x. P(x) | p)``."""
    p = Atom('p')
    return Implies(Forall(X, Or(Atom('P', (X,)), p)),
                   Or(Forall(X, Atom('P', (X,))), p))


def build_lc_axiom(f: Formula, g: Formula) -> Formula:
    """An instance ``(f -> g) | (g -> f)`` of the linearity axiom."""
    return Or(Implies(f, g), Implies(g, f))
