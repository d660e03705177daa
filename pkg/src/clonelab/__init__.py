"""Desk-scale workbench for clone fragments, transformation monoids, and
homogeneous structures.

The package computes with finitary operations on finite carriers and on
two lazily presented countable ones: the ordered rationals with exact
fraction arithmetic, and the random graph in its bit-adjacency
presentation.  On top of the raw operation algebra it offers

* arity-bounded clone fragments with closure, homomorphism enumeration,
  and conjugation lifting checked along two independent paths;
* the uniformity of pointwise convergence as finite windows and
  entourages, with density and interpolation verdicts per window;
* back-and-forth automorphisms and embeddings of the catalog structures,
  grown one point at a time and replayable deterministically;
* pointwise extension of conjugation homomorphisms through continuity
  moduli, with explicit well-definedness and composition-law checks;
* relational structures with endomorphism, embedding, and automorphism
  enumeration, homogeneity decisions, and complement expansions.

Everything is exact: no floating point, no tolerances.  Verdicts on the
countable structures are window-verified, never claimed beyond the
finite sets actually examined.
"""

from .backforth import (
    BackAndForthInterpolator,
    LazyAutomorphism,
    LazyEmbedding,
    NoncommutingReport,
    automorphism_from,
    base_point,
    embedding_from,
    extend_step,
    noncommuting_witness,
    probe_stream,
    transitivity_witness,
)
from .clone import (
    CloneFragment,
    CloneHom,
    LiftingReport,
    close_fragment,
    conjugate_fragment,
    enumerate_clone_homs,
    fragment_from_json,
    fragment_to_json,
    lift_conjugation,
    predict_from_unary_part,
    verify_conjugation_lifting,
)
from .errors import (
    BudgetExceeded,
    InterpolationFailure,
    InvalidSeed,
    ModulusNotFound,
    NotBijective,
    UnsupportedLazyCarrier,
    WorkbenchError,
)
from .extend import (
    ContinuityModulus,
    HomMap,
    check_conjugation_transfer,
    check_hom_law,
    check_well_defined,
    conjugation_modulus,
    derive_modulus,
    extend_hom,
)
from .fnspace import (
    Bijection,
    Carrier,
    FinOp,
    RADO,
    RATIONALS,
    Window,
    all_tuples,
    compose,
    conjugate_op,
    constant_op,
    equal_on_window,
    finite_carrier,
    identity_op,
    make_op,
    projection,
    window,
)
from .monoid import (
    GroupSet,
    MonoidSet,
    centre,
    close_under_composition,
    endo_report,
    group_set,
    injective_endos_fixing,
    invertibles,
    is_action_isomorphism,
    is_transitive,
    is_weakly_directed,
    monoid_from_json,
    monoid_set,
    monoid_to_json,
    weakly_directed_witnesses,
)
from .structures import (
    PartialIso,
    RelStructure,
    aut_group,
    catalog,
    complement_expansion,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    edgeless_graph,
    emb_monoid,
    emb_set,
    end_monoid,
    graph_structure,
    hom_set,
    is_homogeneous,
    is_loopless,
    path_graph,
    rado_adjacency,
    rado_extension_witness,
    rationals_order,
    rado_graph,
    structure_from_json,
    structure_to_json,
)
from .topology import (
    DensityReport,
    Entourage,
    closure_at_window,
    default_window,
    density_profile,
    interpolant,
    is_dense_at_window,
    restriction_signature,
    window_chain,
)

__version__ = "0.1.0"

__all__ = [
    "BackAndForthInterpolator",
    "Bijection",
    "BudgetExceeded",
    "Carrier",
    "CloneFragment",
    "CloneHom",
    "ContinuityModulus",
    "DensityReport",
    "Entourage",
    "FinOp",
    "GroupSet",
    "HomMap",
    "InterpolationFailure",
    "InvalidSeed",
    "LazyAutomorphism",
    "LazyEmbedding",
    "LiftingReport",
    "ModulusNotFound",
    "MonoidSet",
    "NoncommutingReport",
    "NotBijective",
    "PartialIso",
    "RADO",
    "RATIONALS",
    "RelStructure",
    "UnsupportedLazyCarrier",
    "Window",
    "WorkbenchError",
    "all_tuples",
    "aut_group",
    "automorphism_from",
    "base_point",
    "catalog",
    "centre",
    "check_conjugation_transfer",
    "check_hom_law",
    "check_well_defined",
    "close_fragment",
    "close_under_composition",
    "closure_at_window",
    "complement_expansion",
    "complete_graph",
    "complete_multipartite",
    "compose",
    "conjugate_fragment",
    "conjugate_op",
    "conjugation_modulus",
    "constant_op",
    "cycle_graph",
    "default_window",
    "density_profile",
    "derive_modulus",
    "edgeless_graph",
    "emb_monoid",
    "emb_set",
    "embedding_from",
    "end_monoid",
    "endo_report",
    "enumerate_clone_homs",
    "equal_on_window",
    "extend_hom",
    "extend_step",
    "finite_carrier",
    "fragment_from_json",
    "fragment_to_json",
    "graph_structure",
    "group_set",
    "hom_set",
    "identity_op",
    "injective_endos_fixing",
    "interpolant",
    "invertibles",
    "is_action_isomorphism",
    "is_dense_at_window",
    "is_homogeneous",
    "is_loopless",
    "is_transitive",
    "is_weakly_directed",
    "lift_conjugation",
    "make_op",
    "monoid_from_json",
    "monoid_set",
    "monoid_to_json",
    "noncommuting_witness",
    "path_graph",
    "predict_from_unary_part",
    "probe_stream",
    "projection",
    "rado_adjacency",
    "rado_extension_witness",
    "rado_graph",
    "rationals_order",
    "restriction_signature",
    "structure_from_json",
    "structure_to_json",
    "transitivity_witness",
    "verify_conjugation_lifting",
    "weakly_directed_witnesses",
    "window",
    "window_chain",
]
