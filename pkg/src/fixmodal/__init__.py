"""Decision procedures and enumeration for the modal logic of Kripke fixed points."""
from .formula import Formula, ParseError, System, Variable, parse, render, variables
from .isolator import IsolatorPair, SymbolicCount, Tensor, prime_check
from .decide import Verdict, fix_valid, satisfiable, valid
from .normalform import NormalForm, equivalent, to_normal_form, to_second_order

__version__ = "0.1.0"
