"""Build a quorum system and read off its basic numbers.

A quorum system is described by a boolean expression over node names:
``a*b + b*c + a*c`` says a read quorum is any pair of the three nodes.
The write side is derived automatically as the dual expression, which is
the optimal complementary choice.
"""

from quorumopt import Node, QuorumSystem, find_strategy, uniform_strategy

nodes = [Node("a"), Node("b"), Node("c")]
majority = QuorumSystem(nodes, reads="a*b + b*c + a*c")

print("reads: ", majority.reads)
print("writes:", majority.writes)

# Any single node can fail and both sides still have a quorum.
print("fault tolerance:", majority.fault_tolerance())  # 1

# With a 100% read workload, the best strategy spreads reads evenly over
# the three pairs, so the busiest node is working 2/3 of the time.
sigma = find_strategy(majority, 1)
print("load:    ", sigma.load(1))      # 2/3
print("capacity:", sigma.capacity(1))  # 3/2

# Here the uniform strategy happens to be optimal already.
print("uniform load:", uniform_strategy(majority).load(1))  # 2/3
