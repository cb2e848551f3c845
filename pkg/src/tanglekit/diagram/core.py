"""Combinatorial planar diagrams of tangles and links.

Dart layout: crossing c owns darts 4c+s for slot s in 0..3, listed in
counterclockwise rotational order around the crossing; the under-strand
always occupies slots 0 and 2, the over-strand slots 1 and 3.  Endpoint j
(0-based, counterclockwise circular order on the boundary circle) owns the
single dart 4n + j.  `alpha` pairs the two dart ends of every arc.

Faces are traced on the map augmented with the boundary circle: endpoint j
becomes a 3-valent vertex (strand dart plus two virtual gap darts along
the circle), and gap j joins endpoint j to endpoint j+1.  Genus 0 is then
the Euler identity V - E + F = 2 per connected component, counting the
outer disk.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..errors import NonPlanarCode, TangleError


@dataclass(frozen=True)
class Component:
    """One traced strand of a diagram.

    `out_darts` lists, in traversal order, the dart at the start of every
    arc the strand runs along; empty for crossing-free loops.  Open strands
    start at endpoint `start_ep`.
    """

    label: str
    closed: bool
    out_darts: tuple[int, ...]
    start_ep: int | None = None


@dataclass(frozen=True)
class TangleDiagram:
    """Immutable planar diagram; operations return new diagrams."""

    n: int
    k: int
    alpha: tuple[int, ...]
    strings: tuple[tuple[str, int], ...] = ()   # (label, start endpoint)
    loops: tuple[tuple[str, int], ...] = ()     # (label, anchor out-dart)
    free_loops: tuple[str, ...] = ()            # crossing-free circles

    # -- dart helpers ------------------------------------------------------

    @property
    def num_darts(self) -> int:
        return 4 * self.n + self.k

    def ep_dart(self, j: int) -> int:
        return 4 * self.n + j

    def is_ep_dart(self, d: int) -> bool:
        return d >= 4 * self.n

    def crossing_of(self, d: int) -> int:
        return d // 4

    def slot_of(self, d: int) -> int:
        return d % 4

    def through(self, d: int) -> int:
        """Opposite port of the same strand transit at a crossing."""
        return (d - d % 4) + (d % 4 + 2) % 4

    # -- strands -----------------------------------------------------------

    def _trace_from(self, start: int) -> tuple[tuple[int, ...], bool]:
        """Follow the strand leaving along dart `start`.

        Returns (out-darts in order, closed?).
        """
        out: list[int] = []
        d = start
        while True:
            out.append(d)
            nxt = self.alpha[d]
            if self.is_ep_dart(nxt):
                return tuple(out), False
            d = self.through(nxt)
            if d == start:
                return tuple(out), True

    @cached_property
    def components(self) -> tuple[Component, ...]:
        comps: list[Component] = []
        seen: set[int] = set()
        for label, ep in self.strings:
            darts, closed = self._trace_from(self.ep_dart(ep))
            if closed:
                raise TangleError(f"string {label!r} traced to a closed loop")
            comps.append(Component(label, False, darts, ep))
            seen.update(darts)
            seen.update(self.alpha[d] for d in darts)
        for label, anchor in self.loops:
            darts, closed = self._trace_from(anchor)
            if not closed:
                raise TangleError(f"loop {label!r} is not closed")
            comps.append(Component(label, True, darts))
            seen.update(darts)
            seen.update(self.alpha[d] for d in darts)
        if len(seen) != self.num_darts:
            missing = [d for d in range(self.num_darts) if d not in seen]
            raise TangleError(f"darts not covered by declared components: {missing}")
        for label in self.free_loops:
            comps.append(Component(label, True, ()))
        return tuple(comps)

    @cached_property
    def component_of_dart(self) -> dict[int, int]:
        """Maps every dart to its component index (both darts of each arc)."""
        owner: dict[int, int] = {}
        for i, comp in enumerate(self.components):
            for d in comp.out_darts:
                owner[d] = i
                owner[self.alpha[d]] = i
        return owner

    @cached_property
    def orientation(self) -> dict[int, bool]:
        """dart -> True when the component traversal leaves the node via it."""
        out: dict[int, bool] = {}
        for comp in self.components:
            for d in comp.out_darts:
                out[d] = True
                out[self.alpha[d]] = False
        return out

    def label_of(self, dart: int) -> str:
        return self.components[self.component_of_dart[dart]].label

    def component_by_label(self, label: str) -> Component:
        for comp in self.components:
            if comp.label == label:
                return comp
        raise TangleError(f"no component labelled {label!r}")

    def crossings_between(self, label_a: str, label_b: str) -> int:
        """Number of crossings where the two (distinct) components meet."""
        ia = self.components.index(self.component_by_label(label_a))
        ib = self.components.index(self.component_by_label(label_b))
        count = 0
        for c in range(self.n):
            under = self.component_of_dart[4 * c]
            over = self.component_of_dart[4 * c + 1]
            if {under, over} == {ia, ib}:
                count += 1
        return count

    def self_crossings(self, label: str) -> int:
        idx = self.components.index(self.component_by_label(label))
        return sum(
            1
            for c in range(self.n)
            if self.component_of_dart[4 * c] == idx
            and self.component_of_dart[4 * c + 1] == idx
        )

    # -- faces and planarity -----------------------------------------------

    def _gap_right(self, j: int) -> int:
        return self.num_darts + 2 * j

    def _gap_left(self, j: int) -> int:
        return self.num_darts + 2 * j + 1

    def _aug_alpha(self, d: int) -> int:
        if d < self.num_darts:
            return self.alpha[d]
        r = d - self.num_darts
        j, kind = divmod(r, 2)
        if kind == 0:  # gap-right at j pairs with gap-left at j+1
            return self.num_darts + 2 * ((j + 1) % self.k) + 1
        return self.num_darts + 2 * ((j - 1) % self.k)

    def _aug_sigma(self, d: int) -> int:
        """Next dart counterclockwise at the node of d."""
        if d < 4 * self.n:
            return (d - d % 4) + (d % 4 + 1) % 4
        if d < self.num_darts:  # endpoint strand dart -> gap-left
            return self._gap_left(d - 4 * self.n)
        r = d - self.num_darts
        j, kind = divmod(r, 2)
        if kind == 1:  # gap-left -> gap-right
            return self._gap_right(j)
        return self.ep_dart(j)  # gap-right -> strand dart

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Faces as cyclic out-dart sequences (virtual gap darts included)."""
        total = self.num_darts + (2 * self.k if self.k else 0)
        seen: set[int] = set()
        out: list[tuple[int, ...]] = []
        for start in range(total):
            if start in seen:
                continue
            face = []
            d = start
            while d not in seen:
                seen.add(d)
                face.append(d)
                d = self._aug_sigma(self._aug_alpha(d))
            out.append(tuple(face))
        return tuple(out)

    @cached_property
    def face_of_dart(self) -> dict[int, int]:
        owner: dict[int, int] = {}
        for i, face in enumerate(self.faces):
            for d in face:
                owner[d] = i
        return owner

    def _connected_components(self) -> int:
        parent = list(range(self.n + self.k))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a: int, b: int) -> None:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        def node_of(d: int) -> int:
            return d // 4 if d < 4 * self.n else self.n + (d - 4 * self.n)

        for d in range(self.num_darts):
            union(node_of(d), node_of(self.alpha[d]))
        for j in range(self.k):
            union(self.n + j, self.n + (j + 1) % self.k)
        return len({find(x) for x in range(self.n + self.k)}) if self.n + self.k else 0

    def validate(self) -> "TangleDiagram":
        """Checks the involution and the genus-0 Euler identity."""
        if len(self.alpha) != self.num_darts:
            raise TangleError("alpha length mismatch")
        for d, a in enumerate(self.alpha):
            if a == d or not (0 <= a < self.num_darts) or self.alpha[a] != d:
                raise TangleError(f"alpha is not a fixed-point-free involution at dart {d}")
        verts = self.n + self.k
        if verts == 0:
            return self
        edges = self.num_darts // 2 + (self.k if self.k else 0)
        comps = self._connected_components()
        euler = verts - edges + len(self.faces)
        if euler != 2 * comps:
            raise NonPlanarCode(
                f"rotation system has genus > 0: V-E+F = {euler}, expected {2 * comps}"
            )
        _ = self.components  # coverage + open/closed sanity
        return self

    # -- structural transforms ----------------------------------------------

    def mirror(self) -> "TangleDiagram":
        """Switch every crossing (mirror image): rotate slot labels by one."""
        remap = list(range(self.num_darts))
        for c in range(self.n):
            for s in range(4):
                remap[4 * c + s] = 4 * c + (s + 1) % 4
        new_alpha = [0] * self.num_darts
        for d in range(self.num_darts):
            new_alpha[remap[d]] = remap[self.alpha[d]]
        loops = tuple((lab, remap[a]) for lab, a in self.loops)
        return TangleDiagram(
            self.n, self.k, tuple(new_alpha), self.strings, loops, self.free_loops
        )

    # -- canonical code ------------------------------------------------------

    def _code_from(self, start: int, shadow: bool) -> tuple:
        """Deterministic BFS code of the connected piece containing `start`."""
        xid: dict[int, int] = {}
        xrot: dict[int, int] = {}
        tokens: list = []
        queue = [start]
        queued = {start}
        while queue:
            d = queue.pop(0)
            t = self.alpha[d]
            if self.is_ep_dart(t):
                tokens.append(("e", t - 4 * self.n))
                continue
            c = t // 4
            s = t % 4
            if c not in xid:
                xid[c] = len(xid)
                xrot[c] = (s // (1 if shadow else 2)) * (1 if shadow else 2)
                if shadow:
                    xrot[c] = s
                for i in range(1, 4):
                    nd = 4 * c + (s + i) % 4
                    if nd not in queued:
                        queued.add(nd)
                        queue.append(nd)
            rel = (s - xrot[c]) % 4
            tokens.append(("x", xid[c], rel))
        return tuple(tokens)

    def canonical_code(self, shadow: bool = False) -> tuple:
        """Complete invariant under isomorphisms fixing the boundary order.

        With shadow=True the over/under split is quotiented out (used for
        crossing-projection dedup).
        """
        pieces: list[tuple] = []
        covered: set[int] = set()

        def mark(start: int) -> None:
            stack = [start]
            while stack:
                d = stack.pop()
                if d in covered:
                    continue
                covered.add(d)
                t = self.alpha[d]
                stack.append(t)
                if not self.is_ep_dart(t):
                    c = t // 4
                    stack.extend(4 * c + i for i in range(4))
                if not self.is_ep_dart(d):
                    c = d // 4
                    stack.extend(4 * c + i for i in range(4))

        if self.k:
            code = tuple(
                self._code_from(self.ep_dart(j), shadow) for j in range(self.k)
            )
            pieces.append(("b", code))
            for j in range(self.k):
                mark(self.ep_dart(j))
        rest: list[tuple] = []
        for d in range(4 * self.n):
            if d not in covered:
                # minimize over starting darts of this piece
                piece_darts = []
                stack = [d]
                local: set[int] = set()
                while stack:
                    x = stack.pop()
                    if x in local:
                        continue
                    local.add(x)
                    c = x // 4
                    stack.extend(4 * c + i for i in range(4))
                    stack.append(self.alpha[x])
                piece_darts = sorted(local)
                best = min(self._code_from(s, shadow) for s in piece_darts)
                rest.append(best)
                covered.update(local)
        rest.sort()
        pieces.extend(("p", r) for r in rest)
        pieces.append(("o", len(self.free_loops)))
        return (self.n, self.k, tuple(pieces))


class Wiring:
    """Mutable scratch structure for building and rewriting diagrams.

    Ports are ("x", cid, slot) or ("e", eid); `mate` is the pairing.
    `endpoints` keeps the circular boundary order; crossing ids are
    renumbered on freeze in `order` order.
    """

    def __init__(self):
        self.mate: dict[tuple, tuple] = {}
        self.order: list[int] = []
        self.endpoints: list[int] = []
        self._next = 0

    @classmethod
    def from_diagram(cls, d: TangleDiagram) -> "Wiring":
        w = cls()
        w.order = list(range(d.n))
        w.endpoints = list(range(d.k))
        w._next = d.n + d.k

        def port(dart: int) -> tuple:
            if d.is_ep_dart(dart):
                return ("e", dart - 4 * d.n)
            return ("x", dart // 4, dart % 4)

        for dart in range(d.num_darts):
            w.mate[port(dart)] = port(d.alpha[dart])
        return w

    def new_crossing(self) -> int:
        cid = self._next
        self._next += 1
        self.order.append(cid)
        return cid

    def new_endpoint_id(self) -> int:
        eid = self._next
        self._next += 1
        return eid

    def connect(self, a: tuple, b: tuple) -> None:
        self.mate[a] = b
        self.mate[b] = a

    def remove_crossing_splice(self, cid: int) -> list[str]:
        """Delete crossing `cid`, splicing both transits straight through.

        Returns markers "loop" for each crossing-free circle created.
        """
        loops = []
        for s in (0, 1):
            a = self.mate[("x", cid, s)]
            b = self.mate[("x", cid, s + 2)]
            if a == ("x", cid, s + 2):
                loops.append("loop")
            else:
                self.connect(a, b)
        for s in range(4):
            self.mate.pop(("x", cid, s), None)
        self.order.remove(cid)
        return loops

    def to_diagram(
        self,
        strings: tuple[tuple[str, int], ...] = (),
        loops: tuple[tuple[str, tuple], ...] = (),
        free_loops: tuple[str, ...] = (),
    ) -> TangleDiagram:
        """Freeze; `strings` use boundary positions, `loops` anchor ports."""
        xindex = {cid: i for i, cid in enumerate(self.order)}
        eindex = {eid: i for i, eid in enumerate(self.endpoints)}
        n, k = len(self.order), len(self.endpoints)

        def dart(port: tuple) -> int:
            if port[0] == "x":
                return 4 * xindex[port[1]] + port[2]
            return 4 * n + eindex[port[1]]

        alpha = [0] * (4 * n + k)
        for p, q in self.mate.items():
            alpha[dart(p)] = dart(q)
        anchor_loops = tuple((lab, dart(p)) for lab, p in loops)
        return TangleDiagram(n, k, tuple(alpha), tuple(strings), anchor_loops, tuple(free_loops))
