"""Diagram surgeries: capping, string removal, closures, boundary twists.

Boundary conventions for 3-string tangles (endpoints 0..5 counterclockwise):
strings occupy contiguous endpoint pairs (0,1), (2,3), (4,5); the outside
arc positions are c1 = (5,0), c2 = (1,2), c3 = (3,4) and the reference arcs
x12 = (0,1), x23 = (2,3), x31 = (4,5).

Capping at c_i removes that endpoint pair and re-indexes the remaining four
endpoints starting just past the cap, so that the replacement-tangle slot
of the experiment equations is always the boundary pairs (0,1) and (2,3) of
the result.  `close_with` fills that slot: 0/1 joins (0-1) and (2-3), 1/0
joins (1-2) and (3-0), and 1/v inserts v twists before the 1/0-style arcs.

Closure arcs are oriented along the boundary circle (counterclockwise);
each closed component inherits the orientation of its first closure arc,
which realizes the tangle-circle induced orientation used by the linking
number conventions.
"""

from __future__ import annotations

from ..errors import TangleError
from ..rational import TangleFraction
from .build import twist_pair, V_POSITIVE_LEFT_UNDER
from .core import TangleDiagram, Wiring


def _cap_pair(i: int) -> tuple[int, int]:
    if i not in (1, 2, 3):
        raise TangleError("cap index must be 1, 2 or 3")
    return ((2 * i + 3) % 6, (2 * i + 4) % 6)


def _label_by_endpoint(d: TangleDiagram) -> dict[int, str]:
    out: dict[int, str] = {}
    for comp in d.components:
        if not comp.closed:
            out[comp.start_ep] = comp.label
            last = comp.out_darts[-1]
            out[d.alpha[last] - 4 * d.n] = comp.label
    return out


class _Closer:
    """Joins endpoint pairs with boundary arcs, tracking merged labels.

    Arcs are directed (ea -> eb along the circle).  After all joins,
    `finish` freezes the wiring and assigns each closed component the
    "+"-join of the strand labels it swallowed, anchored at its first arc
    so the traversal direction matches the arc direction.
    """

    def __init__(self, d: TangleDiagram):
        self.d = d
        self.w = Wiring.from_diagram(d)
        self.ep_label = _label_by_endpoint(d)
        self.groups: dict[str, set[str]] = {lab: {lab} for lab in {v for v in self.ep_label.values()}}
        self.anchors: list[tuple[tuple, str]] = []  # (port, group rep)
        self.free: list[str] = []

    def _merge(self, la: str, lb: str) -> str:
        ga, gb = self.groups[la], self.groups[lb]
        if ga is not gb:
            ga |= gb
            for lab in gb:
                self.groups[lab] = ga
        return la

    def join(self, ea: int, eb: int) -> None:
        """Add the closure arc ea -> eb (circle direction)."""
        la, lb = self.ep_label[ea], self.ep_label[eb]
        self._merge(la, lb)
        pa, pb = ("e", ea), ("e", eb)
        u, v = self.w.mate[pa], self.w.mate[pb]
        if u == pb:  # the strand ran straight ea..eb: arc closes a circle
            self.free.append(la)
        else:
            self.w.connect(u, v)
            if u[0] == "x":
                self.anchors.append((u, la))
        self.w.mate.pop(pa, None)
        self.w.mate.pop(pb, None)
        self.w.endpoints.remove(ea)
        self.w.endpoints.remove(eb)

    def finish(self) -> TangleDiagram:
        if self.w.endpoints:
            raise TangleError("closure left open endpoints")
        raw = self.w.to_diagram()
        n_old = self.d.n
        xindex = {cid: i for i, cid in enumerate(self.w.order)}
        loops: list[tuple[str, int]] = []
        free: list[str] = []
        covered: set[int] = set()

        def old_labels(darts) -> list[str]:
            labs = set()
            for x in darts:
                for y in (x, raw.alpha[x]):
                    if y < 4 * n_old:
                        labs.add(self.d.components[self.d.component_of_dart[y]].label)
            return sorted(labs)

        def claim(dart: int, label: str | None) -> None:
            darts, closed = raw._trace_from(dart)
            if not closed:
                raise TangleError("closure produced an open strand")
            covered.update(darts)
            covered.update(raw.alpha[x] for x in darts)
            labs = old_labels(darts)
            name = label or ("+".join(labs) if labs else f"o{len(loops) + len(free)}")
            loops.append((name, dart))

        # pre-existing closed components keep label and orientation
        for lab, anchor in self.d.loops:
            if anchor not in covered:
                claim(anchor, lab)
        # each closure arc whose near side reached a crossing orients a loop
        for port, _ in self.anchors:
            dart = 4 * xindex[port[1]] + port[2]
            if dart not in covered:
                claim(dart, None)
        for dart in range(raw.num_darts):
            if dart not in covered:
                claim(dart, None)
        # crossing-free circles: labels merged through arc chains
        seen_groups: set[int] = set()
        for lab in self.free:
            gid = id(self.groups[lab])
            if gid in seen_groups:
                continue
            seen_groups.add(gid)
            free.append("+".join(sorted(self.groups[lab])))
        free.extend(self.d.free_loops)
        return TangleDiagram(
            raw.n, 0, raw.alpha, (), tuple(loops), tuple(free)
        ).validate()


def cap(d: TangleDiagram, i: int, merged_label: str | None = None) -> TangleDiagram:
    """Cap off the c_i boundary arc, turning a 3-string into a 2-string tangle."""
    if d.k != 6:
        raise TangleError("cap needs a 3-string tangle (6 endpoints)")
    a, b = _cap_pair(i)
    labels = _label_by_endpoint(d)
    la, lb = labels[a], labels[b]
    name = merged_label or f"shat{i}"
    w = Wiring.from_diagram(d)
    pa, pb = ("e", a), ("e", b)
    u, v = w.mate[pa], w.mate[pb]
    free_extra: list[str] = []
    loop_anchor: tuple | None = None
    if u == pb:  # the capped pair bounded one crossing-free strand
        free_extra.append(la)
    else:
        w.connect(u, v)
        if la == lb:
            loop_anchor = u if u[0] == "x" else v
    w.mate.pop(pa, None)
    w.mate.pop(pb, None)
    w.endpoints.remove(a)
    w.endpoints.remove(b)
    start = (b + 1) % 6
    w.endpoints.sort(key=lambda e: (e - start) % 6)
    posmap = {e: idx for idx, e in enumerate(w.endpoints)}
    strings: list[tuple[str, int]] = []
    for lab, start_ep in d.strings:
        if lab in (la, lb):
            continue
        strings.append((lab, posmap[start_ep]))
    if la != lb:
        ends = [e for e, lab in labels.items() if lab in (la, lb) and e not in (a, b)]
        strings.append((name, posmap[min(ends)]))
    out = w.to_diagram(strings=tuple(strings))
    real_loops = list(d.loops)
    if la == lb and loop_anchor is not None:
        xindex = {cid: i2 for i2, cid in enumerate(w.order)}
        real_loops.append((name, 4 * xindex[loop_anchor[1]] + loop_anchor[2]))
    return TangleDiagram(
        out.n, out.k, out.alpha, out.strings, tuple(real_loops),
        d.free_loops + tuple(free_extra),
    ).validate()


def remove_string(d: TangleDiagram, label: str) -> TangleDiagram:
    """Delete a string and every crossing it participates in."""
    comp = d.component_by_label(label)
    if comp.closed:
        raise TangleError(f"{label!r} is not an open string")
    idx = d.components.index(comp)
    w = Wiring.from_diagram(d)
    free_extra: list[str] = []
    for c in range(d.n):
        under = d.component_of_dart[4 * c]
        over = d.component_of_dart[4 * c + 1]
        if under != idx and over != idx:
            continue
        if under == idx and over == idx:
            for s in range(4):
                w.mate.pop(("x", c, s), None)
            w.order.remove(c)
            continue
        keep = 1 if under == idx else 0  # surviving transit parity
        pa = ("x", c, keep)
        pb = ("x", c, keep + 2)
        u, v = w.mate[pa], w.mate[pb]
        if u == pb:
            survivor = d.components[over if under == idx else under].label
            free_extra.append(survivor)
        else:
            w.connect(u, v)
        for s in range(4):
            w.mate.pop(("x", c, s), None)
        w.order.remove(c)
    # drop the removed string's leftover material
    material = set(comp.out_darts) | {d.alpha[x] for x in comp.out_darts}
    for dart in material:
        if d.is_ep_dart(dart):
            port = ("e", dart - 4 * d.n)
        else:
            port = ("x", dart // 4, dart % 4)
        w.mate.pop(port, None)
    eps = sorted(e for e in (comp.start_ep, d.alpha[comp.out_darts[-1]] - 4 * d.n))
    k = d.k
    p1, p2 = eps
    if (p1 + 1) % k == p2:
        start = (p1 - 1) % k
    elif (p2 + 1) % k == p1:
        start = (p2 - 1) % k
    else:
        start = min(e for e in range(k) if e not in eps)
    w.endpoints.remove(p1)
    w.endpoints.remove(p2)
    w.endpoints.sort(key=lambda e: (e - start) % k)
    posmap = {e: i2 for i2, e in enumerate(w.endpoints)}
    strings = tuple(
        (lab, posmap[ep]) for lab, ep in d.strings if lab != label
    )
    out = w.to_diagram(strings=strings)
    # loop anchors survive only if their crossing does; re-anchor
    loops = []
    xindex = {cid: i2 for i2, cid in enumerate(w.order)}
    for lab, anchor in d.loops:
        c, s = anchor // 4, anchor % 4
        if c in xindex:
            loops.append((lab, 4 * xindex[c] + s))
        else:
            free_extra.append(lab)  # loop lost all its crossings
    return TangleDiagram(
        out.n, out.k, out.alpha, out.strings, tuple(loops),
        d.free_loops + tuple(free_extra),
    ).validate()


def close_with(d: TangleDiagram, filler: TangleFraction) -> TangleDiagram:
    """Close a 2-string tangle against the filler tangle 0/1, 1/0 or 1/v.

    The filler occupies the boundary pairs (0,1) and (2,3); see module
    docstring for the arc layout per filler.
    """
    if d.k != 4:
        raise TangleError("close_with needs a 2-string tangle (4 endpoints)")
    if filler == TangleFraction(0, 1):
        closer = _Closer(d)
        closer.join(0, 1)
        closer.join(2, 3)
        return closer.finish()
    if filler.is_infinity:
        v = 0
    elif abs(filler.p) == 1:
        v = filler.q * filler.p
    else:
        raise TangleError(f"filler must be 0/1, 1/0 or 1/v, got {filler}")
    closer = _Closer(d)
    if v:
        twist_pair(closer.w, ("e", 0), ("e", 1), v, V_POSITIVE_LEFT_UNDER)
    closer.join(1, 2)
    closer.join(3, 0)
    return closer.finish()


def close_numerator(d: TangleDiagram) -> TangleDiagram:
    """Numerator closure: the 0/1 filler."""
    return close_with(d, TangleFraction(0, 1))


def close_with_x_arcs(d: TangleDiagram) -> TangleDiagram:
    """Close each string of a 3-string tangle along its x_ij boundary arc.

    Produces the 3-component link whose pairwise linking numbers the
    capped-equation conventions constrain.
    """
    if d.k != 6:
        raise TangleError("x-arc closure needs a 3-string tangle")
    closer = _Closer(d)
    closer.join(0, 1)
    closer.join(2, 3)
    closer.join(4, 5)
    return closer.finish()


def add_boundary_twists(d: TangleDiagram, i: int, n: int) -> TangleDiagram:
    """Insert n twists at the c_i boundary position of a 3-string tangle.

    Positive n adds twists whose capped 2-string tangle contributes +n to
    the vertical fraction 1/(f + ...), matching the twist parameterization
    of standard tangles.
    """
    if d.k != 6:
        raise TangleError("boundary twists need a 3-string tangle")
    if n == 0:
        return d
    a, b = _cap_pair(i)
    labels = _label_by_endpoint(d)
    w = Wiring.from_diagram(d)
    twist_pair(w, ("e", a), ("e", b), n, V_POSITIVE_LEFT_UNDER)
    out = w.to_diagram(strings=d.strings, loops=())
    # strand identities: trace from the endpoint of each string that is not
    # at the twisted pair (every 3-string tangle string has one)
    strings = []
    for lab, _ in d.strings:
        ends = [e for e, l2 in labels.items() if l2 == lab]
        anchor = [e for e in ends if e not in (a, b)]
        strings.append((lab, min(anchor) if anchor else min(ends)))
    xindex_loops = []
    for lab, anchor in d.loops:
        xindex_loops.append((lab, anchor))  # crossing ids 0..n-1 unchanged
    return TangleDiagram(
        out.n, out.k, out.alpha, tuple(strings), tuple(xindex_loops), d.free_loops
    ).validate()
