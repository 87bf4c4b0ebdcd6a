"""
Finite Kripke models with per-world domains and the forcing relation.

Classes:
    - Frame
    - AugmentedFrame
    - KripkeModel
    - ValidationReport, Violation
    - Evaluator, Witness
"""

from .evaluator import (Evaluator, Witness, find_counterexample, forces,
                        holds_everywhere)
from .kripke_model import (AugmentedFrame, Frame, KripkeModel, build_model,
                           dump_model, load_model)
from .validation import ValidationReport, Violation, validate_model
