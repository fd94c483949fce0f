"""Vector addition systems with states as language acceptors."""
from .core import (
    COVER, EPS, REACH, Configuration, DisabledTransitionError, ReplayError, Run, Transition,
    UnknownStateError, Vass, VassError, apply, enabled, is_accepting, make_vass, replay, validate,
)
from .semantics import (
    Counterexample, Equal, Holds, InconclusiveError, MembershipResult, SearchOptions, Verdict,
    bounded_equiv, bounded_inclusion, language_up_to, member, reach_set,
)
from .textio import ParseError, parse_2cm, parse_vass, serialize_2cm, serialize_vass

__all__ = [
    "COVER", "EPS", "REACH", "Configuration", "DisabledTransitionError", "ReplayError", "Run", "Transition",
    "UnknownStateError", "Vass", "VassError", "apply", "enabled", "is_accepting", "make_vass", "replay",
    "validate", "Counterexample", "Equal", "Holds", "InconclusiveError", "MembershipResult", "SearchOptions",
    "Verdict", "bounded_equiv", "bounded_inclusion", "language_up_to", "member", "reach_set", "ParseError",
    "parse_2cm", "parse_vass", "serialize_2cm", "serialize_vass",
]
