from dataclasses import dataclass, field
from typing import Iterator, List
import logging

from .kripke_model import KripkeModel

logger = logging.getLogger(__name__)

REFLEXIVITY = 'reflexivity'
TRANSITIVITY = 'transitivity'
ANTISYMMETRY = 'antisymmetry'
LINEARITY = 'linearity'
NONEMPTY_DOMAIN = 'nonempty_domain'
EXPANDING_DOMAINS = 'expanding_domains'
CONSTANT_DOMAINS = 'constant_domains'
GLOBAL_CONSTANT_DOMAIN = 'global_constant_domain'
HEREDITY = 'heredity'
ARITY = 'arity'
DOMAIN_MEMBERSHIP = 'domain_membership'


@dataclass(frozen=True)
class Violation(object):
    condition: str
    witness: tuple
    detail: str = ''

    def to_dict(self) -> dict:
        return {'condition': self.condition,
                'witness': list(self.witness),
                'detail': self.detail}


@dataclass
class ValidationReport(object):
    violations: List[Violation] = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def add(self, condition: str, witness: tuple, detail: str = ''):
        self.violations.append(Violation(condition, witness, detail))

    def conditions(self) -> List[str]:
        return sorted({v.condition for v in self.violations})

    def __iter__(self) -> Iterator[Violation]:
        return iter(self.violations)

    def __len__(self):
        return len(self.violations)

    def to_dict(self) -> dict:
        return {'valid': self.is_valid,
                'violations': [v.to_dict() for v in self.violations]}


def _check_order(m: KripkeModel, report: ValidationReport, linear: bool):
    frame = m.frame
    for w in frame.worlds:
        if not frame.accessible(w, w):
            report.add(REFLEXIVITY, (w,), f'world {w} does not see itself')
    for u in frame.worlds:
        for v in frame.successors_of(u):
            if u != v and frame.accessible(v, u):
                if u < v:
                    report.add(ANTISYMMETRY, (u, v),
                               f'worlds {u} and {v} see each other')
            for x in frame.successors_of(v):
                if not frame.accessible(u, x):
                    report.add(TRANSITIVITY, (u, v, x),
                               f'{u}R{v} and {v}R{x} but not {u}R{x}')
    if linear:
        for u in frame.worlds:
            for v in range(u + 1, frame.n_worlds):
                if not (frame.accessible(u, v) or frame.accessible(v, u)):
                    report.add(LINEARITY, (u, v),
                               f'worlds {u} and {v} are incomparable')


def _check_domains(m: KripkeModel, report: ValidationReport, constant: bool,
                   global_constant: bool):
    for w in m.worlds:
        if not m.domain(w):
            report.add(NONEMPTY_DOMAIN, (w,), f'world {w} has no individuals')
    for u in m.worlds:
        for v in m.frame.successors_of(u):
            if u == v:
                continue
            for d in sorted(m.domain(u) - m.domain(v)):
                report.add(EXPANDING_DOMAINS, (u, v, d),
                           f'{d} is in D_{u} but not in D_{v}')
            if constant:
                for d in sorted(m.domain(v) - m.domain(u)):
                    report.add(CONSTANT_DOMAINS, (u, v, d),
                               f'{d} is in D_{v} but not in D_{u}')
    if global_constant:
        everyone = m.global_domain
        for w in m.worlds:
            for d in sorted(everyone - m.domain(w)):
                report.add(GLOBAL_CONSTANT_DOMAIN, (w, d),
                           f'{d} is missing from D_{w}')


def _check_interpretation(m: KripkeModel, report: ValidationReport):
    for letter in sorted(m.arities):
        arity = m.arities[letter]
        for w in m.worlds:
            domain = m.domain(w)
            for args in sorted(m.extension(letter, w)):
                if len(args) != arity:
                    report.add(ARITY, (w, letter, args),
                               f'{letter} has arity {arity}')
                elif not set(args) <= domain:
                    report.add(DOMAIN_MEMBERSHIP, (w, letter, args),
                               f'{args} is not drawn from D_{w}')
        for u in m.worlds:
            for v in m.frame.successors_of(u):
                if u == v:
                    continue
                lost = m.extension(letter, u) - m.extension(letter, v)
                for args in sorted(lost):
                    report.add(HEREDITY, (u, v, letter, args),
                               f'{letter}{args} holds at {u} but not at {v}')


def validate_model(m: KripkeModel, linear: bool = False,
                   constant_domains: bool = False,
                   global_constant_domain: bool = False) -> ValidationReport:
    """
    Checks the frame, domain and interpretation conditions of ``m`` and
    returns every violation found together with a witness. The
    linearity and constant-domain conditions are only checked when
    requested.
    """
    report = ValidationReport()
    _check_order(m, report, linear)
    _check_domains(m, report, constant_domains, global_constant_domain)
    _check_interpretation(m, report)
    logger.debug(f'Model with {m.n_worlds} worlds: {len(report)} '
                 f'violation(s).')
    return report
