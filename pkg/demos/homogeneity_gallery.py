#!/usr/bin/env python3
"""A gallery of finite graphs, sorted by homogeneity.

A structure is homogeneous when every isomorphism between finite
substructures extends to an automorphism of the whole thing.  On finite
graphs that is checkable by brute force, and the checker either
certifies the property or hands back a concrete partial isomorphism
that provably does not extend.  Along the way we use the complement
trick: adding the complement relation and inequality to the signature
turns embeddings into plain homomorphisms, which is what makes the
enumeration uniform.
"""

from clonelab import (
    centre,
    complement_expansion,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    edgeless_graph,
    emb_monoid,
    end_monoid,
    endo_report,
    hom_set,
    emb_set,
    injective_endos_fixing,
    is_homogeneous,
    path_graph,
)

# ---------------------------------------------------------------------
# 1. who is homogeneous
# ---------------------------------------------------------------------

gallery = [
    ("5-cycle", cycle_graph(5)),
    ("6-cycle", cycle_graph(6)),
    ("complete on 4", complete_graph(4)),
    ("edgeless on 4", edgeless_graph(4)),
    ("path on 4", path_graph(4)),
    ("complete bipartite 3+3", complete_multipartite([3, 3])),
    ("complete tripartite 2+2+2", complete_multipartite([2, 2, 2])),
]

print("homogeneity verdicts:")
for name, graph in gallery:
    ok, witness = is_homogeneous(graph, size_limit=graph.carrier.size)
    if ok:
        print(f"  {name}: homogeneous")
    else:
        print(f"  {name}: NOT homogeneous, non-extendable partial "
              f"isomorphism {witness.pairs}")

# The path on 4 vertices 0-1-2-3 fails immediately: 0 and 1 both have
# an end-of-path role only up to degree, and mapping 0 -> 1 cannot be
# completed.  The 6-cycle fails on a two-point map: opposite vertices
# and distance-two vertices are locally alike but not globally.

# ---------------------------------------------------------------------
# 2. the complement trick
# ---------------------------------------------------------------------

# Expanding a graph by its complement relation and inequality makes
# every homomorphism injective and edge-reflecting, i.e. an embedding
# of the original graph.
p4 = path_graph(4)
expansion = complement_expansion(p4)
embeddings = sorted(emb_set(p4, p4))
expansion_homs = sorted(hom_set(expansion, expansion))
print(f"\npath on 4: {len(embeddings)} self-embeddings, "
      f"{len(expansion_homs)} homomorphisms of the expansion, "
      f"equal: {embeddings == expansion_homs}")

# the same comparison at the monoid level
m_emb = emb_monoid(p4)
m_end = end_monoid(expansion)
print(f"as monoids: {sorted(m_emb.tables()) == sorted(m_end.tables())}")

# ---------------------------------------------------------------------
# 3. injective endomorphisms with prescribed fixed points
# ---------------------------------------------------------------------

# An injective endomorphism of a finite transformation monoid is a
# permutation of its members that respects composition.  Requiring it
# to fix designated members cuts the count down, and fixing everything
# leaves the identity alone.
c5 = cycle_graph(5)
m = emb_monoid(c5)
rotation = next(op for op in m.ops if op.table == (1, 2, 3, 4, 0))

print("\ninjective endomorphisms of the 5-cycle embedding monoid:")
for label, fixed in [("nothing", []),
                     ("the rotation", [rotation]),
                     ("every member", list(m.ops))]:
    report = endo_report(m, fixed=fixed)
    print(f"  fixing {label}: {report['count']}, "
          f"only identity: {report['only_identity']}")

maps = injective_endos_fixing(m, list(m.ops))
print("  the survivor permutes the 10 members as:", list(maps[0]))

# ---------------------------------------------------------------------
# 4. centres
# ---------------------------------------------------------------------

z = centre(m)
print(f"\ncentre of the 5-cycle embedding monoid: "
      f"{[list(op.table) for op in z.ops]} "
      f"(trivial: {len(z.ops) == 1})")

z6 = centre(emb_monoid(cycle_graph(6)))
print(f"centre of the 6-cycle embedding monoid: "
      f"{[list(op.table) for op in z6.ops]}")
