"""Relational structures, their map monoids, and two canonical countable
structures.

Finite structures are extensional (relation tuple sets over a finite
carrier) and all map sets below are found by backtracking with incremental
relation checks.  Two lazily presented structures are built in and
addressed by catalog name:

* ``rationals-order``: the rationals with their strict order, elements
  coded as exact fractions;
* ``rado``: the countable random graph on the naturals with the bit
  adjacency rule, i ~ j (for i < j) exactly when bit i of j is set.
  Every finite adjacency pattern is realised, which is what the witness
  constructions rely on.

A homomorphism preserves every relation; an embedding is injective and
also reflects them; automorphisms are the invertible embeddings.  The
complement expansion of a structure adds the complement of every relation
plus the inequality relation; its endomorphisms are forced to reflect the
original relations and be injective, so they are exactly the embeddings
of the original structure.  That equality is checked computationally, not
assumed, by comparing the two independently computed map sets.
"""

from __future__ import annotations

from itertools import combinations, permutations, product
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .errors import UnsupportedLazyCarrier
from .fnspace import (
    RADO,
    RATIONALS,
    Carrier,
    carrier_from_json,
    carrier_to_json,
    element_to_json,
    finite_carrier,
    identity_op,
    make_op,
)
from .monoid import GroupSet, MonoidSet

DEFAULT_SIZE_LIMIT = 7


class RelStructure:
    """A relational structure: carrier, signature, and relations.

    Finite relations are frozensets of element tuples; lazy relations are
    decidable predicates.  ``name`` identifies catalog members.
    """

    __slots__ = ("carrier", "signature", "relations", "name")

    def __init__(self, carrier: Carrier, signature, relations, name=None):
        self.carrier = carrier
        self.signature = tuple((str(n), int(a)) for n, a in signature)
        if len({n for n, _ in self.signature}) != len(self.signature):
            raise ValueError("duplicate relation names")
        self.name = name
        normalised: Dict[str, object] = {}
        for rel_name, arity in self.signature:
            if rel_name not in relations:
                raise ValueError(f"missing relation {rel_name!r}")
            rel = relations[rel_name]
            if callable(rel):
                normalised[rel_name] = rel
                continue
            carrier.require_finite()
            tuples = set()
            for t in rel:
                t = tuple(t)
                if len(t) != arity:
                    raise ValueError(f"tuple {t} has wrong arity for {rel_name}")
                for x in t:
                    if not carrier.contains(x):
                        raise ValueError(f"element {x!r} outside carrier")
                tuples.add(t)
            normalised[rel_name] = frozenset(tuples)
        self.relations = normalised

    @property
    def is_finite(self) -> bool:
        return self.carrier.is_finite and all(
            not callable(r) for r in self.relations.values())

    def related(self, rel_name: str, *args) -> bool:
        rel = self.relations[rel_name]
        args = tuple(self.carrier.canonical(a) for a in args)
        if callable(rel):
            return bool(rel(*args))
        return args in rel

    def require_finite(self):
        if not self.is_finite:
            raise UnsupportedLazyCarrier(
                "this operation needs a finite extensional structure")

    def arity_of(self, rel_name: str) -> int:
        for n, a in self.signature:
            if n == rel_name:
                return a
        raise KeyError(rel_name)

    def __eq__(self, other):
        if not isinstance(other, RelStructure):
            return NotImplemented
        if not (self.is_finite and other.is_finite):
            return self is other
        return (self.carrier == other.carrier
                and self.signature == other.signature
                and self.relations == other.relations)

    def __hash__(self):
        if not self.is_finite:
            return object.__hash__(self)
        return hash((self.carrier, self.signature,
                     tuple(frozenset(self.relations[n]) for n, _ in self.signature)))

    def __repr__(self):
        label = self.name or f"size={getattr(self.carrier, 'size', '?')}"
        rels = ",".join(f"{n}/{a}" for n, a in self.signature)
        return f"RelStructure({label}, {rels})"


class PartialIso:
    """A finite partial isomorphism of a structure: an injective map that
    preserves and reflects every relation among its domain."""

    __slots__ = ("structure", "pairs")

    def __init__(self, structure: RelStructure, pairs):
        carrier = structure.carrier
        cleaned = sorted(
            ((carrier.canonical(a), carrier.canonical(b)) for a, b in pairs),
        )
        self.structure = structure
        self.pairs = tuple(cleaned)

    def domain(self):
        return [a for a, _ in self.pairs]

    def image(self):
        return [b for _, b in self.pairs]

    def as_dict(self):
        return dict(self.pairs)

    def is_valid(self) -> bool:
        mapping = self.as_dict()
        if len(mapping) != len(self.pairs):
            return False
        if len(set(mapping.values())) != len(mapping):
            return False
        dom = list(mapping)
        for rel_name, arity in self.structure.signature:
            for t in product(dom, repeat=arity):
                src = self.structure.related(rel_name, *t)
                dst = self.structure.related(rel_name, *(mapping[x] for x in t))
                if src != dst:
                    return False
        return True

    def to_json(self) -> dict:
        carrier = self.structure.carrier
        return {
            "pairs": [[element_to_json(carrier, a), element_to_json(carrier, b)]
                      for a, b in self.pairs]
        }

    def __repr__(self):
        return f"PartialIso({dict(self.pairs)!r})"


# ---------------------------------------------------------------------------
# map enumeration on finite structures
# ---------------------------------------------------------------------------

_PREFIX_TUPLES: Dict[Tuple[int, int], Tuple[tuple, ...]] = {}


def _prefix_tuples(d: int, arity: int) -> Tuple[tuple, ...]:
    """All tuples over {0..d} that mention d; the incremental batch of
    relation instances to check after assigning element d."""
    key = (d, arity)
    if key not in _PREFIX_TUPLES:
        out = [t for t in product(range(d + 1), repeat=arity) if d in t]
        _PREFIX_TUPLES[key] = tuple(out)
    return _PREFIX_TUPLES[key]


def _enumerate_maps(a: RelStructure, b: RelStructure, injective: bool,
                    reflect: bool):
    """Backtracking generator of image vectors of structure maps A -> B,
    assigning elements in their natural order."""
    n = a.carrier.size
    m = b.carrier.size
    rels = [(a.relations[name], b.relations[name], arity)
            for name, arity in a.signature]
    images: List[int] = []

    def extend(d: int):
        if d == n:
            yield tuple(images)
            return
        for candidate in range(m):
            if injective and candidate in images:
                continue
            images.append(candidate)
            ok = True
            for ra, rb, arity in rels:
                for t in _prefix_tuples(d, arity):
                    src_in = t in ra
                    if not src_in and not reflect:
                        continue
                    mapped = tuple(images[i] for i in t)
                    dst_in = mapped in rb
                    if src_in and not dst_in:
                        ok = False
                        break
                    if reflect and dst_in and not src_in:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                yield from extend(d + 1)
            images.pop()

    yield from extend(0)


def _check_size(a: RelStructure, size_limit: int):
    a.require_finite()
    if a.carrier.size > size_limit:
        raise ValueError(
            f"structure size {a.carrier.size} exceeds the search limit "
            f"{size_limit}; raise size_limit explicitly to override")


def hom_set(a: RelStructure, b: RelStructure,
            size_limit: int = DEFAULT_SIZE_LIMIT) -> List[tuple]:
    """All homomorphisms A -> B as image vectors (entry i is the image of
    element i).  Both structures must be finite and share a signature."""
    _check_size(a, size_limit)
    b.require_finite()
    if a.signature != b.signature:
        raise ValueError("structures must share a signature")
    return list(_enumerate_maps(a, b, injective=False, reflect=False))


def emb_set(a: RelStructure, b: RelStructure,
            size_limit: int = DEFAULT_SIZE_LIMIT) -> List[tuple]:
    """All embeddings A -> B: injective, preserving and reflecting."""
    _check_size(a, size_limit)
    b.require_finite()
    if a.signature != b.signature:
        raise ValueError("structures must share a signature")
    return list(_enumerate_maps(a, b, injective=True, reflect=True))


def _as_monoid(a: RelStructure, vectors, group: bool = False):
    carrier = a.carrier
    ops = tuple(make_op(carrier, 1, table=v) for v in sorted(vectors))
    cls = GroupSet if group else MonoidSet
    has_id = identity_op(carrier).table in {op.table for op in ops}
    # closure under composition holds for structure-map monoids, so the
    # flag is set rather than re-verified
    return cls(carrier, ops, has_id, True)


def end_monoid(a: RelStructure, size_limit: int = DEFAULT_SIZE_LIMIT) -> MonoidSet:
    """The endomorphism monoid of a finite structure."""
    _check_size(a, size_limit)
    return _as_monoid(a, _enumerate_maps(a, a, injective=False, reflect=False))


def emb_monoid(a: RelStructure, size_limit: int = DEFAULT_SIZE_LIMIT) -> MonoidSet:
    """The self-embedding monoid of a finite structure."""
    _check_size(a, size_limit)
    return _as_monoid(a, _enumerate_maps(a, a, injective=True, reflect=True))


def aut_group(a: RelStructure, size_limit: int = DEFAULT_SIZE_LIMIT) -> GroupSet:
    """The automorphism group (self-embeddings are bijective on a finite
    carrier, so this coincides with emb_monoid there)."""
    _check_size(a, size_limit)
    return _as_monoid(a, _enumerate_maps(a, a, injective=True, reflect=True),
                      group=True)


# ---------------------------------------------------------------------------
# complement expansion
# ---------------------------------------------------------------------------

def complement_expansion(a: RelStructure) -> RelStructure:
    """Add the complement of every relation and the inequality relation.

    Endomorphisms of the expansion preserve each relation and its
    complement (hence reflect the original) and preserve inequality
    (hence are injective), so they coincide with the embeddings of the
    original structure.
    """
    signature = list(a.signature)
    relations: Dict[str, object] = dict(a.relations)
    for rel_name, arity in a.signature:
        co_name = f"co_{rel_name}"
        if any(n == co_name for n, _ in signature):
            raise ValueError(f"name {co_name!r} already taken")
        signature.append((co_name, arity))
        rel = a.relations[rel_name]
        if callable(rel):
            relations[co_name] = _negate(rel)
        else:
            full = set(product(a.carrier.elements(), repeat=arity))
            relations[co_name] = frozenset(full - set(rel))
    if any(n == "neq" for n, _ in signature):
        raise ValueError("name 'neq' already taken")
    signature.append(("neq", 2))
    if a.carrier.is_finite:
        relations["neq"] = frozenset(
            (x, y) for x in a.carrier.elements() for y in a.carrier.elements()
            if x != y)
    else:
        relations["neq"] = lambda x, y: x != y
    new_name = f"{a.name}+complements" if a.name else None
    return RelStructure(a.carrier, signature, relations, name=new_name)


def _negate(pred: Callable) -> Callable:
    return lambda *args: not pred(*args)


# ---------------------------------------------------------------------------
# homogeneity and diagonal uniformity
# ---------------------------------------------------------------------------

def is_homogeneous(a: RelStructure, size_limit: int = DEFAULT_SIZE_LIMIT):
    """Decide homogeneity of a finite structure by exhaustion.

    Every partial isomorphism between induced substructures is tested for
    extension to a full automorphism, in increasing domain size, smallest
    witness first.  Returns (True, None) or (False, witness) where the
    witness is a non-extendable PartialIso.
    """
    _check_size(a, size_limit)
    n = a.carrier.size
    autos = list(_enumerate_maps(a, a, injective=True, reflect=True))
    rels = [(a.relations[name], arity) for name, arity in a.signature]
    for k in range(1, n):
        for dom in combinations(range(n), k):
            for img in permutations(range(n), k):
                mapping = dict(zip(dom, img))
                if not _partial_iso_ok(rels, dom, mapping):
                    continue
                extendable = any(
                    all(auto[d] == mapping[d] for d in dom) for auto in autos)
                if not extendable:
                    return False, PartialIso(a, mapping.items())
    return True, None


def _partial_iso_ok(rels, dom, mapping) -> bool:
    for rel, arity in rels:
        for t in product(dom, repeat=arity):
            if (t in rel) != (tuple(mapping[x] for x in t) in rel):
                return False
    return True


def is_loopless(a: RelStructure, sample_bound: int = 8) -> bool:
    """Each relation holds on no diagonal tuple or on all of them.

    Finite structures are checked exhaustively.  Lazy structures are
    probed on the diagonal over a sample of elements, so the answer is
    window-verified only.
    """
    if a.is_finite:
        points = list(a.carrier.elements())
    else:
        points = [p for p in default_probe_points(a.carrier, sample_bound)]
    for rel_name, arity in a.signature:
        hits = [a.related(rel_name, *([x] * arity)) for x in points]
        if any(hits) and not all(hits):
            return False
    return True


def default_probe_points(carrier: Carrier, k: int):
    """The canonical finite probe set of radius k: integers -k..k on the
    rationals, 0..k on the naturals, 0..min(k, size-1) on finite
    carriers."""
    from fractions import Fraction

    if carrier.is_finite:
        return [x for x in range(min(k + 1, carrier.size))]
    if carrier == RATIONALS:
        return [Fraction(i) for i in range(-k, k + 1)]
    if carrier == RADO:
        return list(range(k + 1))
    raise UnsupportedLazyCarrier("no canonical probe set for this carrier")


# ---------------------------------------------------------------------------
# the bit-adjacency graph on the naturals
# ---------------------------------------------------------------------------

def rado_adjacency(i: int, j: int) -> bool:
    """Adjacency of distinct naturals: order them and test whether the
    smaller indexes a set bit of the larger."""
    for v in (i, j):
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise ValueError(f"vertices are naturals, got {v!r}")
    if i == j:
        raise ValueError("adjacency is defined for distinct vertices only")
    if i > j:
        i, j = j, i
    return (j >> i) & 1 == 1


def rado_extension_witness(adjacent_to, not_adjacent_to) -> int:
    """A vertex adjacent to everything in the first set and nothing in
    the second: set exactly the bits named by the first set, then add one
    bit high enough to clear both sets.

    The construction is deterministic; validity can be re-checked with
    :func:`rado_adjacency`.
    """
    u = {int(x) for x in adjacent_to}
    v = {int(x) for x in not_adjacent_to}
    if u & v:
        raise ValueError(f"sets overlap: {sorted(u & v)}")
    for x in u | v:
        if x < 0:
            raise ValueError("vertices are naturals")
    offset = max(u | v) + 1 if u | v else 0
    return sum(1 << x for x in u) + (1 << offset)


# ---------------------------------------------------------------------------
# catalog structures and finite graph builders
# ---------------------------------------------------------------------------

def rationals_order() -> RelStructure:
    """The dense linear order without endpoints, on exact fractions."""
    return RelStructure(RATIONALS, [("lt", 2)], {"lt": lambda x, y: x < y},
                        name="rationals-order")


def rado_graph() -> RelStructure:
    """The countable random graph in its bit-adjacency presentation."""
    return RelStructure(
        RADO, [("E", 2)],
        {"E": lambda i, j: i != j and rado_adjacency(i, j)},
        name="rado")


_CATALOG = {"rationals-order": rationals_order, "rado": rado_graph}


def catalog(name: str) -> RelStructure:
    if name not in _CATALOG:
        raise ValueError(f"unknown structure {name!r}; catalog has "
                         f"{sorted(_CATALOG)}")
    return _CATALOG[name]()


def graph_structure(size: int, edges: Iterable[tuple],
                    name: Optional[str] = None) -> RelStructure:
    """A finite simple graph as a structure with one symmetric binary
    relation E."""
    sym = set()
    for x, y in edges:
        if x == y:
            raise ValueError("simple graphs have no loops")
        sym.add((x, y))
        sym.add((y, x))
    return RelStructure(finite_carrier(size), [("E", 2)], {"E": sym}, name=name)


def path_graph(n: int) -> RelStructure:
    return graph_structure(n, [(i, i + 1) for i in range(n - 1)],
                           name=f"path-{n}")


def cycle_graph(n: int) -> RelStructure:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    edges = [(i, (i + 1) % n) for i in range(n)]
    return graph_structure(n, edges, name=f"cycle-{n}")


def complete_graph(n: int) -> RelStructure:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return graph_structure(n, edges, name=f"complete-{n}")


def edgeless_graph(n: int) -> RelStructure:
    return graph_structure(n, [], name=f"edgeless-{n}")


def complete_multipartite(part_sizes) -> RelStructure:
    """Complete multipartite graph; vertices are numbered part by part."""
    part_sizes = list(part_sizes)
    part_of = []
    for p, s in enumerate(part_sizes):
        part_of.extend([p] * s)
    n = len(part_of)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if part_of[i] != part_of[j]]
    label = "x".join(str(s) for s in part_sizes)
    return graph_structure(n, edges, name=f"multipartite-{label}")


# ---------------------------------------------------------------------------
# JSON forms
# ---------------------------------------------------------------------------

def structure_to_json(a: RelStructure) -> dict:
    a.require_finite()
    data = {
        "carrier": carrier_to_json(a.carrier),
        "signature": [{"name": n, "arity": arity} for n, arity in a.signature],
        "relations": {
            n: sorted([list(t) for t in a.relations[n]])
            for n, _ in a.signature
        },
    }
    if a.name:
        data["name"] = a.name
    return data


def structure_from_json(data: dict) -> RelStructure:
    carrier = carrier_from_json(data["carrier"])
    signature = [(entry["name"], entry["arity"]) for entry in data["signature"]]
    relations = {
        name: [tuple(t) for t in data["relations"][name]]
        for name, _ in signature
    }
    return RelStructure(carrier, signature, relations, name=data.get("name"))
