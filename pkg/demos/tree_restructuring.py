"""Moving a spanning tree toward a target tree, and a Steiner tree toward a target edge set."""

from restruct import dispatch
from restruct.fixtures import fixture
from restruct.trees import spanning_trees

f = fixture("tree-fig6")
g = f.instance
print(f"{len(g.vertices)} vertices, {len(g.edges)} edges, {sum(1 for _ in spanning_trees(g.vertices, g.edges))} spanning trees")
print("budget  rho  swapped out -> in")
for b in range(0, 11, 2):
    rep = dispatch.restructure(f, b)
    out = ", ".join(map(str, sorted(rep.delta.deleted)))
    new = ", ".join(map(str, sorted(rep.delta.added)))
    print(f"{b:6}  {rep.proximity:3}  {out or '-'} -> {new or '-'}")

st = fixture("steiner-fig7")
print("\nSteiner:")
for b in (0, 4, 10, 16):
    rep = dispatch.restructure(st, b)
    used = "".join(sorted(rep.s_star.steiner_used))
    print(f"budget {b:2}: uses {used or 'no Steiner vertex'}, cost {rep.change_cost}, rho {rep.proximity}")
