"""Clone fragments and conjugation lifting.

A clone fragment is the arity-bounded part of a clone: for each arity up
to a bound, a set of operations containing the projections and closed
under every composition whose result stays within the bound.  Fragments
here live on finite carriers and are fully extensional, which keeps every
question below decidable by finite search.

The central fact the module verifies computationally: a surjective
fragment homomorphism whose unary part acts on a weakly directed set and
restricts to conjugation by a bijection theta is conjugation by theta at
every arity.  The proof is constructive and short, and
:func:`predict_from_unary_part` walks it: to find the image of h at a
target tuple y, pull y back through theta, pick a common ancestor c with
unary witnesses g_i, form the unary map f = h(g_1, ..., g_n), and read off
theta(f(c)).  Comparing that prediction with direct conjugation by theta
(:func:`lift_conjugation`) gives a two-path consistency check with no
shared code between the paths.

:func:`enumerate_clone_homs` is the brute-force oracle used to confirm
that no homomorphism escapes the conjugation description: it enumerates
every arity-preserving, projection-preserving, composition-compatible map
between two fragments by backtracking.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import BudgetExceeded, NotBijective
from .fnspace import (
    Carrier,
    FinOp,
    as_bijection,
    carrier_from_json,
    carrier_to_json,
    compose,
    conjugate_op,
    make_op,
    projection,
)
from .monoid import MonoidSet, is_weakly_directed, monoid_set, weakly_directed_witnesses


class CloneFragment:
    """Operations of arity <= max_arity on a finite carrier, grouped and
    canonically sorted by arity.

    ``contains_projections`` says whether every projection of every arity
    1..max_arity is present; ``closed_within_bound`` whether every
    composition staying inside the bound lands in the fragment.  Both are
    computed from scratch unless supplied by a builder that guarantees
    them.
    """

    __slots__ = ("carrier", "max_arity", "ops_by_arity",
                 "contains_projections", "closed_within_bound")

    def __init__(self, carrier: Carrier, max_arity: int,
                 ops_by_arity: Dict[int, Iterable[FinOp]],
                 contains_projections: Optional[bool] = None,
                 closed_within_bound: Optional[bool] = None):
        carrier.require_finite()
        if max_arity < 1:
            raise ValueError("max_arity must be at least 1")
        self.carrier = carrier
        self.max_arity = max_arity
        grouped: Dict[int, Tuple[FinOp, ...]] = {}
        for arity, ops in ops_by_arity.items():
            if arity > max_arity:
                raise ValueError(f"arity {arity} exceeds the bound {max_arity}")
            unique = {}
            for op in ops:
                if op.arity != arity:
                    raise ValueError("operation filed under the wrong arity")
                if op.carrier != carrier:
                    raise ValueError("operations must share the carrier")
                unique[op.table] = op
            if unique:
                grouped[arity] = tuple(sorted(unique.values(), key=lambda o: o.table))
        self.ops_by_arity = grouped
        if contains_projections is None:
            contains_projections = all(
                projection(carrier, n, i) in self.ops(n)
                for n in range(1, max_arity + 1)
                for i in range(1, n + 1)
            )
        self.contains_projections = contains_projections
        self.closed_within_bound = closed_within_bound

    def arities(self) -> List[int]:
        return sorted(self.ops_by_arity)

    def ops(self, arity: int) -> Tuple[FinOp, ...]:
        return self.ops_by_arity.get(arity, ())

    def all_ops(self):
        """(arity, op) pairs in canonical order."""
        for arity in self.arities():
            for op in self.ops_by_arity[arity]:
                yield arity, op

    def op_count(self) -> int:
        return sum(len(v) for v in self.ops_by_arity.values())

    def contains(self, op: FinOp) -> bool:
        return op in self.ops_by_arity.get(op.arity, ())

    def unary_monoid(self) -> MonoidSet:
        return monoid_set(self.carrier, self.ops(1))

    def signature(self):
        return (self.carrier, self.max_arity,
                tuple((n, tuple(op.table for op in self.ops_by_arity[n]))
                      for n in self.arities()))

    def __eq__(self, other):
        if not isinstance(other, CloneFragment):
            return NotImplemented
        return self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        counts = {n: len(v) for n, v in sorted(self.ops_by_arity.items())}
        return f"CloneFragment(size={self.carrier.size}, ops={counts})"


# ---------------------------------------------------------------------------
# closure
# ---------------------------------------------------------------------------

def close_fragment(gens: Iterable[FinOp], max_arity: int = 3,
                   op_cap: int = 512) -> CloneFragment:
    """The smallest fragment containing the generators: projections are
    seeded, then compositions are added until nothing new appears within
    the arity bound.

    Each arity level is capped at ``op_cap`` operations; crossing the cap
    raises :class:`BudgetExceeded`.  Nullary generators are supported and
    also spawn their constant liftings at every arity within the bound.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    carrier = gens[0].carrier
    carrier.require_finite()
    ops: Dict[int, Dict[tuple, FinOp]] = {n: {} for n in range(0, max_arity + 1)}
    fresh: List[FinOp] = []

    def add(op: FinOp):
        level = ops[op.arity]
        if op.table not in level:
            level[op.table] = op
            fresh.append(op)
            if len(level) > op_cap:
                raise BudgetExceeded(
                    f"fragment closure exceeded {op_cap} operations at arity "
                    f"{op.arity}"
                )

    for n in range(1, max_arity + 1):
        for i in range(1, n + 1):
            add(projection(carrier, n, i))
    for g in gens:
        if g.carrier != carrier:
            raise ValueError("generators must share one carrier")
        if g.arity > max_arity:
            raise ValueError(
                f"generator arity {g.arity} exceeds the bound {max_arity}"
            )
        add(g)

    while fresh:
        new_ops = fresh
        fresh = []
        snapshot = {n: list(level.values()) for n, level in ops.items()}
        new_set = {(op.arity, op.table) for op in new_ops}

        def is_new(op):
            return (op.arity, op.table) in new_set

        for n, outers in snapshot.items():
            if n == 0:
                # a nullary op composes into its constant at every arity
                for f in outers:
                    for m in range(0, max_arity + 1):
                        if is_new(f):
                            add(compose(f, [], target_arity=m))
                continue
            for m in range(0, max_arity + 1):
                inners = snapshot[m]
                if not inners:
                    continue
                for f in outers:
                    f_new = is_new(f)
                    for gs in product(inners, repeat=n):
                        if f_new or any(is_new(g) for g in gs):
                            add(compose(f, gs))

    grouped = {n: tuple(level.values()) for n, level in ops.items() if level}
    return CloneFragment(carrier, max_arity, grouped,
                         contains_projections=True, closed_within_bound=True)


def is_closed_within_bound(frag: CloneFragment) -> bool:
    """Exhaustively confirm the closure flag of a fragment."""
    for n in frag.arities():
        if n == 0:
            for f in frag.ops(0):
                for m in range(0, frag.max_arity + 1):
                    if not frag.contains(compose(f, [], target_arity=m)):
                        return False
            continue
        for f in frag.ops(n):
            for m in frag.arities():
                for gs in product(frag.ops(m), repeat=n):
                    if not frag.contains(compose(f, gs)):
                        return False
    return True


# ---------------------------------------------------------------------------
# conjugation
# ---------------------------------------------------------------------------

def lift_conjugation(theta, h: FinOp) -> FinOp:
    """Conjugate an operation of any arity by a bijection:
    (y_1, ..., y_n) maps to theta(h(theta^-1(y_1), ..., theta^-1(y_n))).

    Raises :class:`NotBijective` when theta cannot be inverted.  Works on
    lazy carriers as a lazy rule.
    """
    theta = as_bijection(theta, h.carrier)
    return conjugate_op(theta, h)


def conjugate_fragment(frag: CloneFragment, theta) -> CloneFragment:
    """Apply :func:`lift_conjugation` to every member.  Projections are
    fixed by conjugation and compositions are preserved, so the flags
    carry over."""
    theta = as_bijection(theta, frag.carrier)
    grouped = {
        n: tuple(lift_conjugation(theta, op) for op in frag.ops(n))
        for n in frag.arities()
    }
    return CloneFragment(frag.carrier, frag.max_arity, grouped,
                         contains_projections=frag.contains_projections,
                         closed_within_bound=frag.closed_within_bound)


def predict_from_unary_part(theta, unary_part, h: FinOp, targets) -> object:
    """Value at ``targets`` of the only possible lift of a unary
    conjugation to h, computed through directedness witnesses.

    Given that some homomorphism sends each unary f to theta f theta^-1,
    its image of h evaluated at y_1, ..., y_n is forced: with
    a_i = theta^-1(y_i), a common ancestor c and witnesses g_i(c) = a_i,
    the unary map f = h(g_1, ..., g_n) must go to its conjugate, and
    evaluating at theta(c) yields theta(f(c)).  This function returns
    theta(f(c)) without ever conjugating h itself, so it is an
    independent second route to the lifted value.

    ``unary_part`` is a MonoidSet (or iterable of unary maps); it must be
    weakly directed enough to supply witnesses for the pulled-back
    targets.
    """
    theta = as_bijection(theta, h.carrier)
    targets = tuple(targets)
    if len(targets) != h.arity:
        raise ValueError(f"expected {h.arity} targets, got {len(targets)}")
    if h.arity == 0:
        return theta(h())
    if not isinstance(unary_part, MonoidSet):
        unary_part = monoid_set(h.carrier, unary_part)
    pulled = tuple(theta.inverse(y) for y in targets)
    c, gs = weakly_directed_witnesses(unary_part, pulled)
    f = compose(h, gs)
    return theta(f(c))


# ---------------------------------------------------------------------------
# fragment homomorphisms
# ---------------------------------------------------------------------------

class CloneHom:
    """An arity-preserving map between two fragments.

    The mapping is stored op-by-op.  ``is_homomorphism`` checks the
    projection and composition conditions within the arity bound;
    ``is_conjugation_by`` compares against direct conjugation.
    """

    __slots__ = ("source", "target", "mapping", "mode", "theta")

    def __init__(self, source: CloneFragment, target: CloneFragment,
                 mapping: Dict[FinOp, FinOp], mode: str = "explicit",
                 theta=None):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)
        self.mode = mode
        self.theta = theta
        for _, op in source.all_ops():
            image = self.mapping.get(op)
            if image is None:
                raise ValueError(f"mapping misses {op!r}")
            if image.arity != op.arity:
                raise ValueError("mapping must preserve arity")
            if not target.contains(image):
                raise ValueError(f"image {image!r} is outside the target fragment")

    @classmethod
    def conjugation(cls, source: CloneFragment, theta,
                    target: Optional[CloneFragment] = None) -> "CloneHom":
        theta = as_bijection(theta, source.carrier)
        mapping = {op: lift_conjugation(theta, op) for _, op in source.all_ops()}
        if target is None:
            target = conjugate_fragment(source, theta)
        return cls(source, target, mapping, mode="conjugation", theta=theta)

    def image(self, op: FinOp) -> FinOp:
        return self.mapping[op]

    def unary_pairs(self):
        return [(op, self.mapping[op]) for op in self.source.ops(1)]

    def is_homomorphism(self) -> bool:
        src, tgt = self.source, self.target
        for n in range(1, src.max_arity + 1):
            for i in range(1, n + 1):
                e = projection(src.carrier, n, i)
                if src.contains(e) and self.mapping[e] != projection(tgt.carrier, n, i):
                    return False
        for n in src.arities():
            for f in src.ops(n):
                if n == 0:
                    for m in range(0, src.max_arity + 1):
                        h = compose(f, [], target_arity=m)
                        if src.contains(h):
                            expected = compose(self.mapping[f], [], target_arity=m)
                            if self.mapping[h] != expected:
                                return False
                    continue
                for m in src.arities():
                    for gs in product(src.ops(m), repeat=n):
                        h = compose(f, gs)
                        if src.contains(h):
                            expected = compose(self.mapping[f],
                                               [self.mapping[g] for g in gs])
                            if self.mapping[h] != expected:
                                return False
        return True

    def is_surjective(self) -> bool:
        for n in self.target.arities():
            images = {self.mapping[op] for op in self.source.ops(n)}
            if images != set(self.target.ops(n)):
                return False
        return True

    def is_injective(self) -> bool:
        for n in self.source.arities():
            images = {self.mapping[op] for op in self.source.ops(n)}
            if len(images) != len(self.source.ops(n)):
                return False
        return True

    def is_conjugation_by(self, theta, unary_only: bool = False) -> bool:
        theta = as_bijection(theta, self.source.carrier)
        for n, op in self.source.all_ops():
            if unary_only and n != 1:
                continue
            if self.mapping[op] != lift_conjugation(theta, op):
                return False
        return True

    def as_index_map(self) -> Dict[int, List[int]]:
        """Per arity, the image position of each source op, both sides in
        canonical table order."""
        out: Dict[int, List[int]] = {}
        for n in self.source.arities():
            tgt_index = {op.table: i for i, op in enumerate(self.target.ops(n))}
            out[n] = [tgt_index[self.mapping[op].table] for op in self.source.ops(n)]
        return out

    def __repr__(self):
        return f"CloneHom(mode={self.mode}, indices={self.as_index_map()})"


def enumerate_clone_homs(source: CloneFragment,
                         target: CloneFragment) -> List[CloneHom]:
    """Every fragment homomorphism from source to target, by backtracking.

    Projections are pinned to projections up front.  All in-bound
    composition identities of the source are precomputed as triples
    (outer, inners, result) and each is checked as soon as the last of its
    participants receives an image, so contradictions prune the search
    immediately.  Output order is deterministic: images are tried in
    canonical table order.
    """
    if source.carrier != target.carrier and source.carrier.size != target.carrier.size:
        raise ValueError("fragments must live on carriers of one size")
    ordered = [op for _, op in source.all_ops()]
    rank = {op: r for r, op in enumerate(ordered)}
    count = len(ordered)

    # pinned projection images; bail out early if the target lacks one
    pinned: Dict[int, FinOp] = {}
    for n in range(1, source.max_arity + 1):
        for i in range(1, n + 1):
            e = projection(source.carrier, n, i)
            if source.contains(e):
                e_t = projection(target.carrier, n, i)
                if not target.contains(e_t):
                    return []
                pinned[rank[e]] = e_t

    # composition triples, indexed by the latest participant rank
    fire_at: List[List[tuple]] = [[] for _ in range(count)]
    for n in source.arities():
        for f in source.ops(n):
            if n == 0:
                for m in range(0, source.max_arity + 1):
                    h = compose(f, [], target_arity=m)
                    if source.contains(h):
                        trip = (rank[f], (), rank[h], m)
                        fire_at[max(rank[f], rank[h])].append(trip)
                continue
            for m in source.arities():
                for gs in product(source.ops(m), repeat=n):
                    h = compose(f, gs)
                    if source.contains(h):
                        ranks = [rank[f], rank[h]] + [rank[g] for g in gs]
                        trip = (rank[f], tuple(rank[g] for g in gs), rank[h], m)
                        fire_at[max(ranks)].append(trip)

    comp_cache: Dict[tuple, tuple] = {}

    def target_compose(f_img: FinOp, g_imgs, m: int):
        key = (f_img.table, tuple(g.table for g in g_imgs), m)
        if key not in comp_cache:
            comp_cache[key] = compose(f_img, g_imgs, target_arity=m).table
        return comp_cache[key]

    assignment: List[Optional[FinOp]] = [None] * count
    results: List[CloneHom] = []

    def consistent_at(r: int) -> bool:
        for f_r, g_rs, h_r, m in fire_at[r]:
            composed = target_compose(assignment[f_r],
                                      [assignment[g] for g in g_rs], m)
            if composed != assignment[h_r].table:
                return False
        return True

    def extend(r: int):
        if r == count:
            mapping = {op: assignment[rank[op]] for op in ordered}
            results.append(CloneHom(source, target, mapping))
            return
        op = ordered[r]
        if r in pinned:
            candidates = (pinned[r],)
        else:
            candidates = target.ops(op.arity)
        for cand in candidates:
            assignment[r] = cand
            if consistent_at(r):
                extend(r + 1)
        assignment[r] = None

    extend(0)
    return results


# ---------------------------------------------------------------------------
# lifting verification
# ---------------------------------------------------------------------------

@dataclass
class LiftingReport:
    """Outcome of :func:`verify_conjugation_lifting`.

    The hypothesis checklist always comes first; when any hypothesis
    fails the conclusion is "hypotheses-not-met" and no operation checks
    are run.
    """

    hypotheses: Dict[str, bool]
    conclusion: str
    checked: int = 0
    counterexamples: List[dict] = field(default_factory=list)

    @property
    def hypotheses_met(self) -> bool:
        return all(self.hypotheses.values())

    def to_json(self) -> dict:
        return {
            "hypotheses": dict(self.hypotheses),
            "conclusion": self.conclusion,
            "checked": self.checked,
            "counterexamples": list(self.counterexamples),
        }


def verify_conjugation_lifting(xi: CloneHom, theta) -> LiftingReport:
    """Check the conjugation-lifting statement on one fragment hom.

    Hypotheses, in order: xi is a homomorphism; xi is surjective within
    the bound; the unary part of the source is weakly directed; xi
    restricted to unary operations is conjugation by theta.  When all
    hold, every operation of every arity is compared against direct
    conjugation and any disagreement is reported as a counterexample
    (the expected outcome is none).
    """
    theta = as_bijection(theta, xi.source.carrier)
    hypotheses = {
        "homomorphism": xi.is_homomorphism(),
        "surjective_within_bound": xi.is_surjective(),
        "unary_part_weakly_directed": is_weakly_directed(xi.source.unary_monoid()),
        "unary_restriction_is_conjugation": xi.is_conjugation_by(theta,
                                                                 unary_only=True),
    }
    if not all(hypotheses.values()):
        return LiftingReport(hypotheses, "hypotheses-not-met")
    checked = 0
    counterexamples = []
    for n, h in xi.source.all_ops():
        expected = lift_conjugation(theta, h)
        actual = xi.image(h)
        checked += 1
        if actual != expected:
            counterexamples.append({
                "arity": n,
                "op": list(h.table),
                "expected": list(expected.table),
                "actual": list(actual.table),
            })
    conclusion = ("conjugation-at-every-arity" if not counterexamples
                  else "counterexamples-found")
    return LiftingReport(hypotheses, conclusion, checked, counterexamples)


# ---------------------------------------------------------------------------
# JSON forms
# ---------------------------------------------------------------------------

def fragment_to_json(frag: CloneFragment) -> dict:
    return {
        "carrier": carrier_to_json(frag.carrier),
        "max_arity": frag.max_arity,
        "ops": {
            str(n): [list(op.table) for op in frag.ops(n)]
            for n in frag.arities()
        },
    }


def fragment_from_json(data: dict) -> CloneFragment:
    carrier = carrier_from_json(data["carrier"])
    grouped: Dict[int, List[FinOp]] = {}
    for key, entries in data["ops"].items():
        arity = int(key)
        level = []
        for entry in entries:
            if isinstance(entry, dict):
                level.append(make_op(carrier, arity, table=entry["table"]))
            else:
                level.append(make_op(carrier, arity, table=entry))
        grouped[arity] = level
    return CloneFragment(carrier, int(data["max_arity"]), grouped)
