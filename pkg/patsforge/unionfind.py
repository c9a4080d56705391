from __future__ import annotations

from typing import List, Tuple


class RollbackUnionFind:
    """Union-find over integer ids with undo.

    Union by rank and no path compression, so every merge can be reverted in
    O(1) by popping the history stack back to a saved mark.
    """

    def __init__(self, size: int = 0):
        self._parent: List[int] = list(range(size))
        self._rank: List[int] = [0] * size
        # (child root, parent root, parent rank before merge)
        self._history: List[Tuple[int, int, int]] = []

    def __len__(self) -> int:
        return len(self._parent)

    def add(self) -> int:
        ident = len(self._parent)
        self._parent.append(ident)
        self._rank.append(0)
        return ident

    def find(self, x: int) -> int:
        parent = self._parent
        while parent[x] != x:
            x = parent[x]
        return x

    def same(self, x: int, y: int) -> bool:
        return self.find(x) == self.find(y)

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self._rank[rx] < self._rank[ry]:
            rx, ry = ry, rx
        self._history.append((ry, rx, self._rank[rx]))
        self._parent[ry] = rx
        if self._rank[rx] == self._rank[ry]:
            self._rank[rx] += 1
        return True

    def mark(self) -> int:
        return len(self._history)

    def rollback(self, mark: int) -> None:
        while len(self._history) > mark:
            child, root, rank = self._history.pop()
            self._parent[child] = child
            self._rank[root] = rank

    def classes(self) -> List[int]:
        """Dense class label per id, numbered by first occurrence."""
        labels: dict = {}
        out: List[int] = []
        for x in range(len(self._parent)):
            out.append(labels.setdefault(self.find(x), len(labels)))
        return out
