"""famcat: an executable posetal model category of set families.

Objects are finite families of finite-or-cofinite subsets of the naturals;
there is at most one arrow between any ordered pair.  The package decides
arrows and their model-structure labels, builds limits, factorizations and
exponentials, answers queries against virtual (infinite) objects through
closed forms, and machine-checks the axioms and structural claims over
exhaustive or sampled universes of objects.
"""

from .harness import (
    AXIOM_NAMES,
    CLAIM_NAMES,
    CheckResult,
    Report,
    SizeGuardError,
    Universe,
    Violation,
    check_axiom,
    check_claim,
    enumerate_objects,
    run_axioms,
    run_claims,
    sample_objects,
    universe_objects,
)
from .kernel import (
    INITIAL,
    TERMINAL,
    GapWitness,
    LabelVerdict,
    Obj,
    StarTemplate,
    arrow_exists,
    coproduct,
    fibration_condition,
    fibration_condition_enumerated,
    fibration_gap,
    initial,
    is_iso,
    label_c,
    label_f,
    label_verdict,
    label_w,
    normalize,
    product,
    star_arrow,
    terminal,
)
from .nset import EMPTY, FULL, Cardinality, Kind, NSet, diff_card, is_subset
from .univalence import (
    CertificateStep,
    Fibration,
    UnivalenceCertificate,
    UnsupportedFibrationError,
    VirtualFibration,
    is_p_small,
    is_small,
    is_univalent,
    sample_fibrations,
    universal_fibration,
    universe_object_facts,
    verify_universal,
)
from .vobj import (
    FactorizationCheck,
    UndecidedPairError,
    VKind,
    VObj,
    arrow_from_utilde,
    arrow_from_vobj,
    arrow_into_vobj,
    check_factorization,
    exp_explicit,
    exp_slice,
    is_iso_virtual,
    label_w_into_vobj,
    star_from_vobj,
    star_into_vobj,
    uprod_dominates,
    wc_covers,
    wexp_member,
)

__version__ = "0.1.0"

__all__ = [
    "AXIOM_NAMES",
    "CLAIM_NAMES",
    "Cardinality",
    "CertificateStep",
    "CheckResult",
    "EMPTY",
    "FULL",
    "FactorizationCheck",
    "Fibration",
    "GapWitness",
    "INITIAL",
    "Kind",
    "LabelVerdict",
    "NSet",
    "Obj",
    "Report",
    "SizeGuardError",
    "StarTemplate",
    "TERMINAL",
    "UndecidedPairError",
    "UnivalenceCertificate",
    "Universe",
    "UnsupportedFibrationError",
    "VKind",
    "VObj",
    "Violation",
    "VirtualFibration",
    "arrow_exists",
    "arrow_from_utilde",
    "arrow_from_vobj",
    "arrow_into_vobj",
    "check_axiom",
    "check_claim",
    "check_factorization",
    "coproduct",
    "diff_card",
    "enumerate_objects",
    "exp_explicit",
    "exp_slice",
    "fibration_condition",
    "fibration_condition_enumerated",
    "fibration_gap",
    "initial",
    "is_iso",
    "is_iso_virtual",
    "is_p_small",
    "is_small",
    "is_subset",
    "is_univalent",
    "label_c",
    "label_f",
    "label_verdict",
    "label_w",
    "label_w_into_vobj",
    "normalize",
    "product",
    "run_axioms",
    "run_claims",
    "sample_fibrations",
    "sample_objects",
    "star_arrow",
    "star_from_vobj",
    "star_into_vobj",
    "terminal",
    "universal_fibration",
    "universe_object_facts",
    "universe_objects",
    "uprod_dominates",
    "verify_universal",
    "wc_covers",
    "wexp_member",
]
