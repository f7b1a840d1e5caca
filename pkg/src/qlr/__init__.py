"""Quantitative logical relations for a simply typed lambda calculus over the reals."""
from .errors import (ContractError, DomainError, ParseError, QlrError, StructuralError, TypingError,
                     UnsupportedOperation)
from .finite import FiniteQlr, FiniteQlrMap, check_axioms, curry, derivative, expQ, expQr, uncurry
from .lipschitz import checkDLambdaProps, checkLipValidity, denoteLL, derivLL, localContextualityBound
from .parser import parse, parse_type
from .quantale import DiscreteTwo, Interval, Lawvere, Product, TruncChain, quantale_from_config
from .reports import LawReport, LawResult
from .semantics import (Grid, contextuality_bound, denote, derivQ, derivQr, distance,
                        non_additivity_witness, reproduce_fig1)
from .syntax import normalize, pretty, typecheck
from .valuation import diamValuation, liftedM, liftedP, uMetric

__version__ = "0.1.0"
