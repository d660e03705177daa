"""Clone fragment layer.

Hand-derived expectations used below:

* the fragment generated by AND at arity bound 2 is {identity} at arity 1
  and {AND, first projection, second projection} at arity 2, since
  AND(x, x) = x collapses every other composition;
* the fragment generated by XOR adds the constant-0 map at both arities
  because XOR(x, x) = 0;
* AND and NOT generate all 4 unary and all 16 binary operations;
* conjugating AND by the swap of {0,1} gives OR (de Morgan, checked by
  truth table);
* the two-element fragment {identity, NOT} admits exactly two
  endomorphisms (NOT can go to NOT or collapse to the identity), and
  {identity, c0} maps to {identity, c1} in exactly two ways.
"""

import itertools
import random

import pytest

from clonelab.errors import BudgetExceeded, NotBijective
from clonelab.clone import (
    CloneFragment,
    CloneHom,
    close_fragment,
    conjugate_fragment,
    enumerate_clone_homs,
    fragment_from_json,
    fragment_to_json,
    is_closed_within_bound,
    lift_conjugation,
    predict_from_unary_part,
    verify_conjugation_lifting,
)
from clonelab.fnspace import (
    Bijection,
    constant_op,
    equal_on_window,
    finite_carrier,
    make_op,
    projection,
    window,
)
from clonelab.monoid import monoid_set

B2 = finite_carrier(2)

ID2 = make_op(B2, 1, table=[0, 1])
NOT = make_op(B2, 1, table=[1, 0])
C0 = make_op(B2, 1, table=[0, 0])
C1 = make_op(B2, 1, table=[1, 1])
AND = make_op(B2, 2, table=[0, 0, 0, 1])
OR = make_op(B2, 2, table=[0, 1, 1, 1])
XOR = make_op(B2, 2, table=[0, 1, 1, 0])
NAND = make_op(B2, 2, table=[1, 1, 1, 0])
SWAP = Bijection.from_table(B2, [1, 0])
IDENT = Bijection.identity(B2)


def binary_tables(frag):
    return [list(op.table) for op in frag.ops(2)]


def unary_tables(frag):
    return [list(op.table) for op in frag.ops(1)]


# ---------------------------------------------------------------------------
# closure
# ---------------------------------------------------------------------------

def test_and_fragment_contents():
    frag = close_fragment([AND], max_arity=2)
    assert unary_tables(frag) == [[0, 1]]
    assert binary_tables(frag) == [[0, 0, 0, 1], [0, 0, 1, 1], [0, 1, 0, 1]]
    assert frag.contains_projections
    assert frag.closed_within_bound


def test_xor_fragment_contents():
    frag = close_fragment([XOR], max_arity=2)
    assert unary_tables(frag) == [[0, 0], [0, 1]]
    assert binary_tables(frag) == [
        [0, 0, 0, 0], [0, 0, 1, 1], [0, 1, 0, 1], [0, 1, 1, 0]]


def test_not_and_generate_everything_within_bound_two():
    frag = close_fragment([NOT, AND], max_arity=2)
    assert len(frag.ops(1)) == 4
    assert len(frag.ops(2)) == 16


def test_closure_flag_cross_checked():
    frag = close_fragment([XOR], max_arity=2)
    assert is_closed_within_bound(frag)


def test_unary_only_bound():
    frag = close_fragment([NOT], max_arity=1)
    assert unary_tables(frag) == [[0, 1], [1, 0]]
    assert frag.arities() == [1]


def test_nullary_generator_spawns_constants():
    one = constant_op(B2, 1)
    frag = close_fragment([one], max_arity=2)
    assert [list(op.table) for op in frag.ops(0)] == [[1]]
    assert [1, 1] in unary_tables(frag)
    assert [1, 1, 1, 1] in binary_tables(frag)


def test_generator_arity_above_bound_rejected():
    with pytest.raises(ValueError):
        close_fragment([AND], max_arity=1)


def test_op_cap_enforced():
    with pytest.raises(BudgetExceeded):
        close_fragment([NOT, AND], max_arity=2, op_cap=10)


# ---------------------------------------------------------------------------
# conjugation of single operations and whole fragments
# ---------------------------------------------------------------------------

def test_conjugating_and_by_swap_gives_or():
    assert lift_conjugation(SWAP, AND) == OR
    assert lift_conjugation(SWAP, OR) == AND


def test_conjugation_by_identity_is_identity():
    for op in (AND, OR, XOR, NOT, C0):
        assert lift_conjugation(IDENT, op) == op


def test_double_conjugation_returns_the_original():
    for i in range(16):
        table = [(i >> k) & 1 for k in (3, 2, 1, 0)]
        op = make_op(B2, 2, table=table)
        assert lift_conjugation(SWAP, lift_conjugation(SWAP, op)) == op


def test_conjugation_fixes_projections():
    for n in (1, 2, 3):
        for i in range(1, n + 1):
            e = projection(B2, n, i)
            assert lift_conjugation(SWAP, e) == e


def test_conjugation_needs_a_bijection():
    with pytest.raises(NotBijective):
        lift_conjugation(C0, AND)


def test_conjugation_carries_windows_to_image_windows():
    # agreement on J maps exactly to agreement on theta[J]
    ops = [make_op(B2, 2, table=[(i >> k) & 1 for k in (3, 2, 1, 0)])
           for i in range(16)]
    for pts in ([0], [1], [0, 1]):
        j = window(B2, pts)
        j_img = window(B2, [SWAP(p) for p in pts])
        for f1, f2 in itertools.combinations(ops, 2):
            lhs = equal_on_window(f1, f2, j)
            rhs = equal_on_window(lift_conjugation(SWAP, f1),
                                  lift_conjugation(SWAP, f2), j_img)
            assert lhs == rhs


def test_conjugate_fragment_of_and_is_or_fragment():
    frag = close_fragment([AND], max_arity=2)
    assert conjugate_fragment(frag, SWAP) == close_fragment([OR], max_arity=2)


def test_conjugate_fragment_is_involutive_under_swap():
    frag = close_fragment([XOR, C1], max_arity=2)
    assert conjugate_fragment(conjugate_fragment(frag, SWAP), SWAP) == frag


# ---------------------------------------------------------------------------
# the two computation routes to a lifted value
# ---------------------------------------------------------------------------

def test_predicted_value_matches_conjugation_on_swap_monoid():
    unary = monoid_set(B2, [ID2, NOT])
    lifted = lift_conjugation(SWAP, AND)  # = OR
    for targets in itertools.product((0, 1), repeat=2):
        predicted = predict_from_unary_part(SWAP, unary, AND, targets)
        assert predicted == lifted(*targets)


def test_predicted_value_on_constants_monoid():
    unary = monoid_set(B2, [ID2, C0, C1])
    assert predict_from_unary_part(IDENT, unary, AND, (1, 1)) == 1
    assert predict_from_unary_part(IDENT, unary, AND, (1, 0)) == 0


def test_predicted_value_for_nullary_ops():
    one = constant_op(B2, 1)
    assert predict_from_unary_part(SWAP, monoid_set(B2, [ID2]), one, ()) == 0


def test_prediction_needs_directedness_for_the_pulled_back_targets():
    with pytest.raises(ValueError):
        predict_from_unary_part(IDENT, monoid_set(B2, [ID2]), AND, (0, 1))


def test_two_routes_agree_on_random_instances():
    rng = random.Random(2024)
    for _ in range(120):
        size = rng.choice((2, 3))
        carrier = finite_carrier(size)
        perm = list(range(size))
        rng.shuffle(perm)
        theta = Bijection.from_table(carrier, perm)
        # build a weakly directed unary part: identity plus constants
        # reaches every target from any ancestor
        unary_ops = [make_op(carrier, 1, table=list(range(size)))]
        unary_ops += [make_op(carrier, 1, table=[v] * size) for v in range(size)]
        for _ in range(rng.randrange(3)):
            unary_ops.append(make_op(
                carrier, 1, table=[rng.randrange(size) for _ in range(size)]))
        unary = monoid_set(carrier, unary_ops)
        arity = rng.choice((1, 2, 3))
        h = make_op(carrier, arity,
                    table=[rng.randrange(size) for _ in range(size ** arity)])
        targets = tuple(rng.randrange(size) for _ in range(arity))
        predicted = predict_from_unary_part(theta, unary, h, targets)
        assert predicted == lift_conjugation(theta, h)(*targets)


# ---------------------------------------------------------------------------
# fragment homomorphisms
# ---------------------------------------------------------------------------

def test_conjugation_hom_is_a_surjective_homomorphism():
    frag = close_fragment([NOT, AND], max_arity=2)
    xi = CloneHom.conjugation(frag, SWAP)
    assert xi.is_homomorphism()
    assert xi.is_surjective()
    assert xi.is_injective()
    assert xi.is_conjugation_by(SWAP)
    assert not xi.is_conjugation_by(IDENT)


def test_hom_mapping_must_cover_the_source():
    frag = close_fragment([NOT], max_arity=1)
    with pytest.raises(ValueError):
        CloneHom(frag, frag, {ID2: ID2})


def test_enumerate_homs_of_swap_fragment():
    frag = close_fragment([NOT], max_arity=1)
    homs = enumerate_clone_homs(frag, frag)
    assert len(homs) == 2
    images = sorted(h.image(NOT).table for h in homs)
    assert images == [(0, 1), (1, 0)]
    assert [h.is_surjective() for h in homs].count(True) == 1


def test_enumerate_homs_between_constant_fragments():
    src = close_fragment([C0], max_arity=1)
    dst = close_fragment([C1], max_arity=1)
    homs = enumerate_clone_homs(src, dst)
    assert len(homs) == 2
    images = sorted(h.image(C0).table for h in homs)
    assert images == [(0, 1), (1, 1)]


def test_enumerate_homs_from_and_fragment_to_itself():
    frag = close_fragment([AND], max_arity=2)
    homs = enumerate_clone_homs(frag, frag)
    assert len(homs) == 1
    assert homs[0].image(AND) == AND


def test_enumerate_homs_from_and_to_or_fragment():
    src = close_fragment([AND], max_arity=2)
    dst = close_fragment([OR], max_arity=2)
    homs = enumerate_clone_homs(src, dst)
    assert len(homs) == 1
    xi = homs[0]
    assert xi.image(AND) == OR
    assert xi.is_surjective()
    assert xi.is_conjugation_by(SWAP)


def test_enumerated_homs_all_pass_the_homomorphism_check():
    frag = close_fragment([XOR], max_arity=2)
    homs = enumerate_clone_homs(frag, frag)
    assert homs
    for xi in homs:
        assert xi.is_homomorphism()


def test_missing_target_projection_means_no_homs():
    src = close_fragment([NOT], max_arity=1)
    bare = CloneFragment(B2, 1, {1: [C0]})
    assert enumerate_clone_homs(src, bare) == []


# ---------------------------------------------------------------------------
# lifting verification
# ---------------------------------------------------------------------------

def test_verify_lifting_happy_path():
    frag = close_fragment([NOT, AND], max_arity=2)
    xi = CloneHom.conjugation(frag, SWAP)
    report = verify_conjugation_lifting(xi, SWAP)
    assert report.hypotheses == {
        "homomorphism": True,
        "surjective_within_bound": True,
        "unary_part_weakly_directed": True,
        "unary_restriction_is_conjugation": True,
    }
    assert report.conclusion == "conjugation-at-every-arity"
    assert report.checked == 20
    assert report.counterexamples == []


def test_verify_lifting_rejects_undirected_unary_part():
    frag = close_fragment([AND], max_arity=2)
    xi = CloneHom.conjugation(frag, IDENT)
    report = verify_conjugation_lifting(xi, IDENT)
    assert report.hypotheses["unary_part_weakly_directed"] is False
    assert report.conclusion == "hypotheses-not-met"
    assert report.checked == 0


def test_verify_lifting_flags_wrong_theta():
    frag = close_fragment([NOT, AND], max_arity=2)
    xi = CloneHom.conjugation(frag, SWAP)
    report = verify_conjugation_lifting(xi, IDENT)
    assert report.hypotheses["unary_restriction_is_conjugation"] is False
    assert report.conclusion == "hypotheses-not-met"


def test_report_json_shape():
    frag = close_fragment([NOT, AND], max_arity=2)
    xi = CloneHom.conjugation(frag, SWAP)
    data = verify_conjugation_lifting(xi, SWAP).to_json()
    assert data["conclusion"] == "conjugation-at-every-arity"
    assert data["checked"] == 20
    assert data["counterexamples"] == []
    assert set(data["hypotheses"]) == {
        "homomorphism", "surjective_within_bound",
        "unary_part_weakly_directed", "unary_restriction_is_conjugation"}


# ---------------------------------------------------------------------------
# JSON forms
# ---------------------------------------------------------------------------

def test_fragment_json_round_trip():
    frag = close_fragment([XOR, C1], max_arity=2)
    data = fragment_to_json(frag)
    again = fragment_from_json(data)
    assert again == frag
    assert again.contains_projections
