"""Trading capacity for resilience.

Contacting a bare quorum is fastest but fragile: one slow or dead node
forces a second round trip to a different quorum. Contacting every node is
robust but wasteful. The f parameter spans the middle ground: strategies
only ever pick quorums that remain quorums after removing any f of their
nodes, so up to f stragglers cost nothing.
"""

from quorumopt import Node, QuorumSystem, find_strategy

nodes = [
    Node("a", write_cap=100, read_cap=200),
    Node("b", write_cap=100, read_cap=200),
    Node("c", write_cap=50, read_cap=100),
    Node("d", write_cap=50, read_cap=100),
]

grid = QuorumSystem(nodes, reads="a*b + c*d")
print("grid, f=0:", float(find_strategy(grid, 1, f=0).capacity(1)))  # 300
print("grid, f=1:", float(find_strategy(grid, 1, f=1).capacity(1)))  # 100
# The only 1-resilient read quorum of the grid is all four nodes:
print("1-resilient read quorums:", [sorted(q) for q in grid.resilient_quorums("read", 1)])

# A 2-of-4 threshold system pays far less for the same resilience, because
# any three nodes already contain a quorum after one removal.
read2 = QuorumSystem(nodes, reads="choose(2, [a, b, c, d])")
print("2-of-4, f=0:", float(find_strategy(read2, 1, f=0).capacity(1)))  # 300
print("2-of-4, f=1:", float(find_strategy(read2, 1, f=1).capacity(1)))  # 200
