"""Undirected simple graph over a fixed node set.

Nodes are the integers 0..n-1 for the lifetime of the graph (populations
here never gain or lose members, only links). The adjacency is kept as one
set per node, which makes the O(k) neighbor sampling needed by the rewiring
rules cheap while preserving the symmetric, zero-diagonal adjacency-matrix
semantics.

A single PopulationGraph instance must only be mutated from one thread;
sharing read-only between mutation batches is fine.
"""

from collections import deque

__all__ = ["PopulationGraph"]


class PopulationGraph:
    """Symmetric 0/1 adjacency over nodes 0..n-1, no self loops.

    Parameters
    ----------
    n : int
        Node count, at least 3.
    edges : iterable of (int, int), optional
        Initial edges; validated like `add_edge`.
    """

    __slots__ = ("n", "_adj")

    def __init__(self, n, edges=()):
        if n < 3:
            raise ValueError("graph needs at least 3 nodes, got %r" % (n,))
        self.n = int(n)
        self._adj = [set() for _ in range(self.n)]
        for i, j in edges:
            self.add_edge(i, j)

    @classmethod
    def ring(cls, n):
        """Cycle graph: node i linked to (i-1) mod n and (i+1) mod n."""
        g = cls(n)
        for i in range(n):
            g.add_edge(i, (i + 1) % n)
        return g

    @classmethod
    def complete(cls, n):
        """Fully connected graph (the panmictic population structure)."""
        g = cls(n)
        for i in range(n):
            for j in range(i + 1, n):
                g.add_edge(i, j)
        return g

    def copy(self):
        g = PopulationGraph.__new__(PopulationGraph)
        g.n = self.n
        g._adj = [set(s) for s in self._adj]
        return g

    def _check_node(self, i):
        if not 0 <= i < self.n:
            raise ValueError("node %r out of range 0..%d" % (i, self.n - 1))

    def neighbors(self, i):
        """Live neighbor set of node i. Treat as read-only."""
        self._check_node(i)
        return self._adj[i]

    def degree(self, i):
        self._check_node(i)
        return len(self._adj[i])

    def degrees(self):
        return [len(s) for s in self._adj]

    def has_edge(self, i, j):
        self._check_node(i)
        self._check_node(j)
        return j in self._adj[i]

    def add_edge(self, i, j):
        self._check_node(i)
        self._check_node(j)
        if i == j:
            raise ValueError("self loop at node %d" % i)
        if j in self._adj[i]:
            raise ValueError("edge (%d, %d) already present" % (i, j))
        self._adj[i].add(j)
        self._adj[j].add(i)

    def remove_edge(self, i, j):
        self._check_node(i)
        self._check_node(j)
        if j not in self._adj[i]:
            raise ValueError("edge (%d, %d) not present" % (i, j))
        self._adj[i].discard(j)
        self._adj[j].discard(i)

    def num_edges(self):
        return sum(len(s) for s in self._adj) // 2

    def edges(self):
        """Sorted list of (i, j) pairs with i < j."""
        out = []
        for i, nbrs in enumerate(self._adj):
            for j in nbrs:
                if j > i:
                    out.append((i, j))
        out.sort()
        return out

    def two_step_walk(self, start, rng):
        """Two uniform neighbor hops from `start`.

        Returns (mid, end). The walk may return to the start node; callers
        that need end != start or non-adjacency filter for themselves.
        """
        self._check_node(start)
        nbrs = tuple(self._adj[start])
        if not nbrs:
            raise ValueError("node %d has no neighbors" % start)
        mid = nbrs[rng.randrange(len(nbrs))]
        nbrs2 = tuple(self._adj[mid])
        end = nbrs2[rng.randrange(len(nbrs2))]
        return mid, end

    def is_connected(self):
        """True iff a BFS from node 0 reaches every node."""
        seen = bytearray(self.n)
        seen[0] = 1
        queue = deque((0,))
        count = 1
        adj = self._adj
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = 1
                    count += 1
                    queue.append(w)
        return count == self.n

    def bfs_distances(self, source):
        """Shortest path length from `source` to every node; -1 if unreachable."""
        self._check_node(source)
        dist = [-1] * self.n
        dist[source] = 0
        queue = deque((source,))
        adj = self._adj
        while queue:
            v = queue.popleft()
            d = dist[v] + 1
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = d
                    queue.append(w)
        return dist

    def to_dot(self):
        """Plain DOT text, `graph { a -- b; }`, edges sorted for stable output."""
        lines = ["graph {"]
        for i, j in self.edges():
            lines.append("  %d -- %d;" % (i, j))
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        if not isinstance(other, PopulationGraph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj

    def __repr__(self):
        return "PopulationGraph(n=%d, edges=%d)" % (self.n, self.num_edges())
