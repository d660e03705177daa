"""Lazily presented automorphisms and embeddings of the two catalog
structures, built by back-and-forth extension from a finite seed.

On the rational order the map is the piecewise linear automorphism
through the seed anchors: exact linear interpolation between consecutive
anchors and slope one outside them.  It is a pure function of the seed,
so query order never changes any value.

On the bit-adjacency graph the map is built online.  Each new query is
answered by the smallest fresh vertex whose adjacencies to the already
matched vertices mirror those of the query point; if no vertex below the
scan cap fits, a witness is constructed directly from the required bit
pattern.  Answers are memoised, so a single map object is consistent
across queries, but the values depend on the order in which fresh
queries arrive.  Two map objects built from the same seed agree only if
queried in the same order; snapshots record exactly what has been
determined.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from typing import Callable, Iterator, List, Optional

from .errors import (
    BudgetExceeded,
    InterpolationFailure,
    InvalidSeed,
    UnsupportedLazyCarrier,
)
from .fnspace import RADO, RATIONALS, Carrier, FinOp, make_op, element_to_json
from .structures import RelStructure, rado_adjacency

DEFAULT_SCAN_CAP = 4096

# widest integer the constructive fallback may build; repeated fallbacks
# against their own huge witnesses would otherwise tower without bound
MAX_WITNESS_BITS = 1 << 16


# ---------------------------------------------------------------------------
# piecewise linear maps on the rationals
# ---------------------------------------------------------------------------

def _pl_eval(xs, ys, x):
    """Evaluate the piecewise linear map with anchors (xs, ys) at x; both
    anchor lists are strictly increasing and exact."""
    if not xs:
        return x
    i = bisect_left(xs, x)
    if i < len(xs) and xs[i] == x:
        return ys[i]
    if i == 0:
        return ys[0] + (x - xs[0])
    if i == len(xs):
        return ys[-1] + (x - xs[-1])
    x0, x1 = xs[i - 1], xs[i]
    y0, y1 = ys[i - 1], ys[i]
    return y0 + (x - x0) * (y1 - y0) / (x1 - x0)


class _PiecewiseLinear:
    """Order automorphism of the rationals through fixed anchors."""

    __slots__ = ("xs", "ys")

    def __init__(self, xs, ys):
        self.xs = tuple(xs)
        self.ys = tuple(ys)

    def forward(self, x):
        return _pl_eval(self.xs, self.ys, x)

    def backward(self, y):
        return _pl_eval(self.ys, self.xs, y)

    def swapped(self) -> "_PiecewiseLinear":
        return _PiecewiseLinear(self.ys, self.xs)

    def known_pairs(self):
        return list(zip(self.xs, self.ys))

    @property
    def order_sensitive(self) -> bool:
        return False


# ---------------------------------------------------------------------------
# online back-and-forth on the bit-adjacency graph
# ---------------------------------------------------------------------------

def _fresh_partner(x: int, matched: dict, taken: dict, scan_cap: int) -> int:
    """The smallest vertex not in ``taken`` whose adjacencies to the
    values of ``matched`` copy those of x to its keys, falling back to a
    direct bit construction past the scan cap.

    The constructed witness sets a bit at each vertex it must touch and
    its top bit just above the bit length of the vertices it must miss,
    so witness sizes grow by one bit per fallback rather than doubling
    in length.
    """
    pattern = [(a, b, rado_adjacency(x, a)) for a, b in matched.items()]
    for w in range(scan_cap):
        if w in taken:
            continue
        if all(rado_adjacency(w, b) == adj for _, b, adj in pattern):
            return w
    like = {b for _, b, adj in pattern if adj}
    unlike = {b for _, b, adj in pattern if not adj}
    if like and max(like) + 1 > MAX_WITNESS_BITS:
        # adjacency to so large a vertex cannot be arranged by setting a
        # bit at its position; the only remaining witnesses sit at the
        # set-bit positions of that vertex, so try those directly
        huge = max(like)
        for z in _bit_positions(huge):
            if z in taken:
                continue
            if all(rado_adjacency(z, b) == adj for _, b, adj in pattern):
                return z
        raise BudgetExceeded(
            f"a fresh witness adjacent to a vertex above 2**"
            f"{MAX_WITNESS_BITS} could not be found; raise the scan cap "
            f"so small witnesses are found earlier")
    t = max(like, default=-1) + 1
    for u in unlike:
        t = max(t, u.bit_length())
    base = sum(1 << e for e in like)
    while True:
        if t > MAX_WITNESS_BITS:
            raise BudgetExceeded(
                f"a fresh witness here needs more than {MAX_WITNESS_BITS} "
                f"bits; raise the scan cap so small witnesses are found "
                f"before the constructive fallback")
        if t not in unlike:
            w = base + (1 << t)
            if w not in taken:
                return w
        t += 1


def _bit_positions(n: int):
    pos = 0
    while n:
        if n & 1:
            yield pos
        n >>= 1
        pos += 1


class _RadoBackForth:
    """Memoised two-sided extension on the bit-adjacency graph."""

    __slots__ = ("fwd", "bwd", "scan_cap")

    def __init__(self, fwd: dict, scan_cap: int):
        self.fwd = dict(fwd)
        self.bwd = {b: a for a, b in self.fwd.items()}
        self.scan_cap = scan_cap

    def forward(self, x: int) -> int:
        if x in self.fwd:
            return self.fwd[x]
        w = _fresh_partner(x, self.fwd, self.bwd, self.scan_cap)
        self.fwd[x] = w
        self.bwd[w] = x
        return w

    def backward(self, y: int) -> int:
        if y in self.bwd:
            return self.bwd[y]
        z = _fresh_partner(y, self.bwd, self.fwd, self.scan_cap)
        self.bwd[y] = z
        self.fwd[z] = y
        return z

    def swapped(self) -> "_Swapped":
        return _Swapped(self)

    def known_pairs(self):
        return sorted(self.fwd.items())

    @property
    def order_sensitive(self) -> bool:
        return True


class _Swapped:
    """Inverse view sharing state with its base, so a map and its
    inverse can never drift apart."""

    __slots__ = ("base",)

    def __init__(self, base):
        self.base = base

    def forward(self, x):
        return self.base.backward(x)

    def backward(self, y):
        return self.base.forward(y)

    def swapped(self):
        return self.base

    def known_pairs(self):
        return sorted((b, a) for a, b in self.base.known_pairs())

    @property
    def order_sensitive(self) -> bool:
        return self.base.order_sensitive


# ---------------------------------------------------------------------------
# seed validation
# ---------------------------------------------------------------------------

def _seed_dict(structure: RelStructure, pairs) -> dict:
    carrier = structure.carrier
    seed = {}
    images = {}
    for a, b in pairs:
        a, b = carrier.canonical(a), carrier.canonical(b)
        if seed.get(a, b) != b:
            raise InvalidSeed(f"{a} is sent to both {seed[a]} and {b}")
        if images.get(b, a) != a:
            raise InvalidSeed(f"{b} is hit by both {images[b]} and {a}")
        seed[a] = b
        images[b] = a
    return seed


def _validated_seed(structure: RelStructure, pairs) -> dict:
    seed = _seed_dict(structure, pairs)
    items = list(seed.items())
    for i, (a, b) in enumerate(items):
        for c, d in items[i + 1:]:
            for name, _ in structure.signature:
                if structure.related(name, a, c) != structure.related(name, b, d):
                    raise InvalidSeed(
                        f"pairs ({a}, {b}) and ({c}, {d}) disagree on "
                        f"relation {name}")
                if structure.related(name, c, a) != structure.related(name, d, b):
                    raise InvalidSeed(
                        f"pairs ({a}, {b}) and ({c}, {d}) disagree on "
                        f"relation {name}")
    return seed


def _impl_for(structure: RelStructure, seed: dict, scan_cap: int):
    if structure.carrier == RATIONALS:
        anchors = sorted(seed.items())
        return _PiecewiseLinear([a for a, _ in anchors], [b for _, b in anchors])
    if structure.carrier == RADO:
        return _RadoBackForth(seed, scan_cap)
    raise UnsupportedLazyCarrier(
        "back-and-forth strategies are available for the catalog "
        "structures only")


# ---------------------------------------------------------------------------
# the public map classes
# ---------------------------------------------------------------------------

class LazyAutomorphism:
    """An automorphism of a catalog structure, defined lazily and
    extending a finite seed of matched pairs."""

    __slots__ = ("structure", "_impl")

    def __init__(self, structure: RelStructure, impl):
        self.structure = structure
        self._impl = impl

    def __call__(self, x):
        return self._impl.forward(self.structure.carrier.canonical(x))

    def inverse(self, y):
        return self._impl.backward(self.structure.carrier.canonical(y))

    def inverted(self) -> "LazyAutomorphism":
        return LazyAutomorphism(self.structure, self._impl.swapped())

    def as_op(self) -> FinOp:
        return make_op(self.structure.carrier, 1, rule=self.__call__)

    def snapshot(self) -> List[tuple]:
        """The pairs determined so far (for the rational order, the seed
        anchors; everything else is implied by them)."""
        return self._impl.known_pairs()

    @property
    def order_sensitive(self) -> bool:
        """Whether values at fresh points depend on query order."""
        return self._impl.order_sensitive

    def to_json(self) -> dict:
        carrier = self.structure.carrier
        return {
            "structure": self.structure.name,
            "order_sensitive": self.order_sensitive,
            "pairs": [[element_to_json(carrier, a), element_to_json(carrier, b)]
                      for a, b in self.snapshot()],
        }

    def __repr__(self):
        pairs = ", ".join(f"{a}->{b}" for a, b in self.snapshot()[:4])
        more = "..." if len(self.snapshot()) > 4 else ""
        return f"LazyAutomorphism({self.structure.name}: {pairs}{more})"


class LazyEmbedding:
    """An injective endomorphism of the bit-adjacency graph built
    forward only; its image can be made to avoid a finite vertex set,
    which yields self-embeddings that are not automorphisms."""

    __slots__ = ("structure", "_fwd", "_taken", "_avoid", "_scan_cap")

    def __init__(self, structure: RelStructure, seed: dict, avoid, scan_cap: int):
        self.structure = structure
        self._fwd = dict(seed)
        self._avoid = frozenset(avoid)
        self._taken = {b: a for a, b in seed.items()}
        for b in self._avoid:
            self._taken.setdefault(b, None)
        self._scan_cap = scan_cap

    def __call__(self, x):
        x = self.structure.carrier.canonical(x)
        if x in self._fwd:
            return self._fwd[x]
        w = _fresh_partner(x, self._fwd, self._taken, self._scan_cap)
        self._fwd[x] = w
        self._taken[w] = x
        return w

    def inverse(self, y):
        y = self.structure.carrier.canonical(y)
        x = self._taken.get(y)
        if x is None:
            raise ValueError(f"{y} is not in the computed image")
        return x

    def as_op(self) -> FinOp:
        return make_op(self.structure.carrier, 1, rule=self.__call__)

    def snapshot(self) -> List[tuple]:
        return sorted(self._fwd.items())

    @property
    def avoided(self) -> frozenset:
        return self._avoid

    def to_json(self) -> dict:
        carrier = self.structure.carrier
        return {
            "structure": self.structure.name,
            "avoid": sorted(self._avoid),
            "pairs": [[element_to_json(carrier, a), element_to_json(carrier, b)]
                      for a, b in self.snapshot()],
        }


# ---------------------------------------------------------------------------
# constructors and stepping
# ---------------------------------------------------------------------------

def automorphism_from(structure: RelStructure, pairs=(),
                      scan_cap: int = DEFAULT_SCAN_CAP) -> LazyAutomorphism:
    """The canonical automorphism extending a finite partial isomorphism
    of a catalog structure; InvalidSeed if the pairs are not one."""
    if structure.carrier not in (RATIONALS, RADO):
        raise UnsupportedLazyCarrier(
            "back-and-forth strategies are available for the catalog "
            "structures only")
    seed = _validated_seed(structure, pairs)
    return LazyAutomorphism(structure, _impl_for(structure, seed, scan_cap))


def embedding_from(structure: RelStructure, pairs=(), avoid=(),
                   scan_cap: int = DEFAULT_SCAN_CAP) -> LazyEmbedding:
    """A self-embedding of the bit-adjacency graph extending the seed,
    with image disjoint from ``avoid``."""
    if structure.carrier != RADO:
        raise UnsupportedLazyCarrier(
            "forward-only embeddings with avoidance are built on the "
            "bit-adjacency graph; on the rational order use "
            "automorphism_from, whose maps are embeddings already")
    seed = _validated_seed(structure, pairs)
    avoid = {structure.carrier.canonical(v) for v in avoid}
    clash = avoid & set(seed.values())
    if clash:
        raise InvalidSeed(f"seed images {sorted(clash)} lie in the avoid set")
    return LazyEmbedding(structure, seed, avoid, scan_cap)


def extend_step(mapping, x):
    """Force one more point, returning the matched pair; the value is
    recorded in the map's memo."""
    return (x, mapping(x))


# ---------------------------------------------------------------------------
# witnesses for transitivity and trivial centre
# ---------------------------------------------------------------------------

def base_point(carrier: Carrier):
    if carrier == RATIONALS:
        return Fraction(0)
    if carrier == RADO:
        return 0
    raise UnsupportedLazyCarrier("no canonical base point for this carrier")


def transitivity_witness(structure: RelStructure, a, b):
    """Automorphisms f, g and a point c with f(c) = a and g(c) = b; the
    automorphism group acts transitively, so singleton seeds always
    extend."""
    c = base_point(structure.carrier)
    f = automorphism_from(structure, [(c, a)])
    g = automorphism_from(structure, [(c, b)])
    return f, g, c


def probe_stream(carrier: Carrier) -> Iterator:
    """A deterministic stream of probe points that visits every element
    of the carrier: zero and signed Calkin-Wilf rationals, or the
    naturals in order."""
    if carrier == RATIONALS:
        def gen():
            yield Fraction(0)
            x = Fraction(1)
            while True:
                yield x
                yield -x
                x = 1 / (2 * math.floor(x) + 1 - x)
        return gen()
    if carrier == RADO:
        return count(0)
    raise UnsupportedLazyCarrier("no canonical probe stream for this carrier")


@dataclass(frozen=True)
class NoncommutingReport:
    """Outcome of a search for an automorphism that fails to commute
    with a given map; success exhibits the probe point and both
    composite values."""

    outcome: str
    probes_checked: int
    point: object = None
    partner: Optional[LazyAutomorphism] = None
    left: object = None
    right: object = None

    @property
    def found(self) -> bool:
        return self.outcome == "witness-found"

    def to_json(self) -> dict:
        data = {"outcome": self.outcome, "probes_checked": self.probes_checked}
        if self.found:
            carrier = self.partner.structure.carrier
            data["point"] = element_to_json(carrier, self.point)
            data["left"] = element_to_json(carrier, self.left)
            data["right"] = element_to_json(carrier, self.right)
            data["partner"] = self.partner.to_json()
        return data


def noncommuting_witness(structure: RelStructure, f: Callable,
                         probe_budget: int = 64) -> NoncommutingReport:
    """Search for g in Aut with f(g(x)) != g(f(x)) at a probe point.

    The first probe x moved by f yields g directly: g fixes x and sends
    f(x) to a point z != f(x) chosen compatibly with the structure, so
    the composites differ at x.  A map fixing every probe gets the
    outcome "identity-on-probed-points", which on a lazy carrier is all
    a finite search can certify.
    """
    stream = probe_stream(structure.carrier)
    checked = 0
    moved = None
    for x in stream:
        if checked >= probe_budget:
            break
        checked += 1
        if f(x) != x:
            moved = x
            break
    if moved is None:
        return NoncommutingReport(outcome="identity-on-probed-points",
                                  probes_checked=checked)
    x = moved
    fx = f(x)
    if structure.carrier == RATIONALS:
        z = (x + fx) / 2
    else:
        want = rado_adjacency(x, fx)
        z = next(w for w in count(0)
                 if w not in (x, fx) and rado_adjacency(w, x) == want)
    g = automorphism_from(structure, [(x, x), (fx, z)])
    left = f(g(x))
    right = g(fx)
    return NoncommutingReport(outcome="witness-found", probes_checked=checked,
                              point=x, partner=g, left=left, right=right)


# ---------------------------------------------------------------------------
# interpolation strategy for the pointwise machinery
# ---------------------------------------------------------------------------

class BackAndForthInterpolator:
    """Interpolates unary targets by automorphisms: the target restricted
    to the window becomes a seed, and the seed's canonical extension is
    the interpolant.  Fails exactly when the restriction is not a
    partial isomorphism."""

    def __init__(self, structure: RelStructure,
                 scan_cap: int = DEFAULT_SCAN_CAP):
        self.structure = structure
        self.scan_cap = scan_cap

    def interpolant(self, f: FinOp, win) -> FinOp:
        if f.arity != 1:
            raise InterpolationFailure(
                "automorphism interpolation handles unary targets only")
        pairs = [(p, f(p)) for p in win.sorted_points()]
        try:
            aut = automorphism_from(self.structure, pairs, self.scan_cap)
        except InvalidSeed as exc:
            raise InterpolationFailure(
                f"the target is not a partial isomorphism on the window: "
                f"{exc}") from exc
        return aut.as_op()
