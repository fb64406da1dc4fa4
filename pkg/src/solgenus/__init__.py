"""Profinite genus of torus-bundle groups, computed through quadratic form classes."""

from .conjugacy import (
    BruteSearchResult,
    ConjugacyWitness,
    ModularWitness,
    ProfiniteEvidence,
    are_conjugate_gl2z,
    are_conjugate_mod_m,
    brute_force_conjugator,
    canonical_form,
    matrix_to_form,
    profinite_evidence,
)
from .errors import (
    DegenerateSpectrum,
    DiscriminantMismatch,
    ImprimitiveForm,
    NotUnimodular,
    ParseError,
    SolgenusError,
)
from .forms import (
    BQForm,
    EquivMode,
    FormClassSet,
    class_count,
    class_set,
    cycle,
    forms_equivalent,
    reduce_definite,
    rho_step,
)
from .genus import (
    GenusReport,
    Rigidity,
    TheoremBranch,
    corollary1_check,
    genus,
    presentation,
    rigidity_verdict,
)
from .ideals import IdealRep, LMSet, companion, form_to_ideal, lm_representatives, multiplication_matrix
from .matrices import (
    CharPoly,
    GeometryLabel,
    IntMat2,
    SpectrumClass,
    char_poly,
    format_matrix,
    geometry,
    is_hyperbolic,
    mat_inv,
    mat_mul,
    matrix_order,
    parse_matrix,
    spectrum_class,
)
from .orders import (
    OrderDisc,
    QuadElement,
    UnitElement,
    disc_from_int,
    eigenvalue_unit,
    order_disc,
    square_free_decompose,
    subring_index,
)

__version__ = "0.1.0"
