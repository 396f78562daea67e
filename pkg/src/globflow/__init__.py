"""Combinatorial engine for finite acyclic flows.

States plus directed atoms generate a finite path set with concatenation
as composition.  On top of that the package provides globe attachments
computed by an explicit path-space colimit, decomposition scripts,
flow isomorphism and subdivision (T-homotopy) equivalence checking,
underlying-space homotopy signatures, and an exact timed-path algebra.
"""

from .builder import DecompositionScript, ScriptStep, build, concat, glob, script, step
from .core import (
    MINUS,
    PLUS,
    Atom,
    BranchClassSet,
    Flow,
    FlowPresentation,
    Path,
    ReachabilityReport,
    StateId,
    branch_classes,
    compose,
    expand_path,
    final_states,
    initial_states,
    paths_between,
    presentation,
    reachability_report,
    restrict,
    validate,
)
from .errors import FlowError
from .homotopy import (
    FlowMorphism,
    THomotopyReport,
    check_T_homotopy,
    find_T_homotopy,
    invariant_summary,
    is_isomorphic,
    is_morphism,
)
from .pushout import (
    AdmissibleSequence,
    AttachSpec,
    TClass,
    TQuotient,
    admissible_sequences,
    attach_globe,
    attach_spec,
    build_T,
    simplification_maps,
)
from .underlying import (
    HomotopySignature,
    UnderlyingGraph,
    homotopy_signature,
    underlying_graph,
)

__version__ = "0.1.0"

__all__ = [
    "MINUS",
    "PLUS",
    "AdmissibleSequence",
    "Atom",
    "AttachSpec",
    "BranchClassSet",
    "DecompositionScript",
    "Flow",
    "FlowError",
    "FlowMorphism",
    "FlowPresentation",
    "HomotopySignature",
    "Path",
    "ReachabilityReport",
    "ScriptStep",
    "StateId",
    "TClass",
    "THomotopyReport",
    "TQuotient",
    "UnderlyingGraph",
    "admissible_sequences",
    "attach_globe",
    "attach_spec",
    "branch_classes",
    "build",
    "build_T",
    "check_T_homotopy",
    "compose",
    "concat",
    "expand_path",
    "final_states",
    "find_T_homotopy",
    "glob",
    "homotopy_signature",
    "initial_states",
    "invariant_summary",
    "is_isomorphic",
    "is_morphism",
    "paths_between",
    "presentation",
    "reachability_report",
    "restrict",
    "script",
    "simplification_maps",
    "step",
    "underlying_graph",
    "validate",
]
