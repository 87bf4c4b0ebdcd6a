from . import countermodel, exceptions, grid, reduction, turing, utils
from . import semantics, syntax
from .countermodel import (ConjunctReport, TruncatedModel, build_countermodel,
                           conjunct_report)
from .reduction import build_phi, build_psi
from .settings import Settings
from .tiles import TileGrid, TileSet, TileType
from .turing import TuringMachine
