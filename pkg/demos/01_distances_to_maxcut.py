"""From a table of numbers to a two-way split.

Binary clustering can be phrased as a graph problem: put every row of
the dataset on a node, weight each edge by the Euclidean distance
between the two rows, and ask for the cut that separates as much total
distance as possible.  Rows that are far apart end up on opposite
sides; rows that are similar stay together.

Run:  python3 demos/01_distances_to_maxcut.py
"""

import numpy as np

from cutclust import (
    cut_value,
    euclidean_weights,
    exact_solve,
    ising_from_graph,
    load_dataset,
    resolve_dataset,
)

dataset = load_dataset(resolve_dataset("cars"))
print("rows:", dataset.names)
print("feature matrix (z-scored):")
print(np.round(dataset.points, 3))

graph = euclidean_weights(dataset)
print("\npairwise distance weights:")
print(np.round(graph.weights, 3))

# The diagonal Hamiltonian assigns every bitstring x the energy
# E(x) = -cut(x), so the ground states are exactly the best splits.
ising = ising_from_graph(graph)
solution = exact_solve(ising)
print(f"\nground energy {solution.ground_energy:.4f}  "
      f"(max cut {solution.max_cut:.4f})")

for state in solution.ground_states:
    bits = [(state >> i) & 1 for i in range(graph.n)]
    cut = cut_value(graph, np.array(bits))
    groups = {0: [], 1: []}
    for name, b in zip(dataset.names, bits):
        groups[b].append(name)
    print(f"\nstate {format(state, f'0{graph.n}b')} (cut {cut:.4f})")
    print("  side 0:", ", ".join(groups[0]))
    print("  side 1:", ", ".join(groups[1]))

# The two ground states are complements of each other: flipping every
# bit relabels the sides without changing the cut.
