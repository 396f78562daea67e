"""Small shared helpers."""

from __future__ import annotations

from typing import Hashable, Iterable


class UnionFind:
    """Union-find over arbitrary hashable items, created lazily on first touch."""

    def __init__(self, items: Iterable[Hashable] = ()) -> None:
        self._parent: dict = {}
        for item in items:
            self._parent.setdefault(item, item)

    def add(self, item: Hashable) -> None:
        self._parent.setdefault(item, item)

    def find(self, item: Hashable) -> Hashable:
        self._parent.setdefault(item, item)
        root = item
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[item] != root:
            self._parent[item], item = root, self._parent[item]
        return root

    def union(self, a: Hashable, b: Hashable) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self._parent[ra] = rb

    def classes(self) -> list[frozenset]:
        groups: dict = {}
        for item in self._parent:
            groups.setdefault(self.find(item), []).append(item)
        return [frozenset(members) for members in groups.values()]
