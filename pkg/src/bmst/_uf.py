class UnionFind:
    """Disjoint sets over 0..n-1 with path halving and union by size."""

    __slots__ = ("parent", "size", "count")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.count = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of `a` and `b`; False if they were already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.count -= 1
        return True

    def connected(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)

    def copy(self) -> "UnionFind":
        other = UnionFind.__new__(UnionFind)
        other.parent = self.parent[:]
        other.size = self.size[:]
        other.count = self.count
        return other

    def labels(self) -> list[int]:
        """Component label per element, labels numbered by smallest member."""
        out = [-1] * len(self.parent)
        root_label: dict[int, int] = {}
        for x in range(len(self.parent)):
            r = self.find(x)
            if r not in root_label:
                root_label[r] = len(root_label)
            out[x] = root_label[r]
        return out
