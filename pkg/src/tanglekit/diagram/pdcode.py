"""PD text format for tangle and link diagrams.

Format (UTF-8, LF line endings, `#` comments):

    tangle k=<strings> n=<crossings>
    X a b c d     one line per crossing: arc ids counterclockwise,
                  starting from the incoming under-arc
    B p1 ... p2k  arc ids met at the boundary, circular order
    S lbl: a1,a2,...  arcs of each component in traversal order

Arc ids are arbitrary positive integers; every arc has exactly two
incidences among the X and B lines, except a crossing-free closed loop,
whose single arc id appears only in its S line.  Closed diagrams have
k=0 and no B line.
"""

from __future__ import annotations

from ..errors import PDSyntaxError
from .core import TangleDiagram


def emit_pd(d: TangleDiagram) -> str:
    comps = d.components
    arc_id: dict[int, int] = {}
    nxt = 1
    s_lines: list[str] = []
    for comp in comps:
        ids = []
        for dart in comp.out_darts:
            arc_id[dart] = nxt
            arc_id[d.alpha[dart]] = nxt
            ids.append(str(nxt))
            nxt += 1
        if not comp.out_darts:  # crossing-free circle
            ids.append(str(nxt))
            nxt += 1
        s_lines.append(f"S {comp.label}: {','.join(ids)}")
    x_lines = []
    for c in range(d.n):
        u_in = 0 if not d.orientation[4 * c + 0] else 2
        slots = [(u_in + i) % 4 for i in range(4)]
        x_lines.append("X " + " ".join(str(arc_id[4 * c + s]) for s in slots))
    lines = [f"tangle k={len(d.strings)} n={d.n}"]
    lines.extend(x_lines)
    if d.k:
        lines.append("B " + " ".join(str(arc_id[d.ep_dart(j)]) for j in range(d.k)))
    lines.extend(s_lines)
    return "\n".join(lines) + "\n"


def parse_pd(text: str) -> TangleDiagram:
    header = None
    x_rows: list[tuple[int, list[int]]] = []
    b_row: list[int] | None = None
    s_rows: list[tuple[int, str, list[int]]] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "tangle":
            kv = {}
            for tok in parts[1:]:
                if "=" not in tok:
                    raise PDSyntaxError(f"bad header token {tok!r}", ln)
                key, val = tok.split("=", 1)
                try:
                    kv[key] = int(val)
                except ValueError:
                    raise PDSyntaxError(f"non-integer header value {val!r}", ln)
            if "k" not in kv or "n" not in kv:
                raise PDSyntaxError("header needs k= and n=", ln)
            header = kv
        elif tag == "X":
            if len(parts) != 5:
                raise PDSyntaxError("X line needs four arc ids", ln)
            try:
                x_rows.append((ln, [int(t) for t in parts[1:]]))
            except ValueError:
                raise PDSyntaxError("non-integer arc id", ln)
        elif tag == "B":
            try:
                b_row = [int(t) for t in parts[1:]]
            except ValueError:
                raise PDSyntaxError("non-integer arc id", ln)
        elif tag == "S":
            rest = line[1:].strip()
            if ":" not in rest:
                raise PDSyntaxError("S line needs 'label: arcs'", ln)
            label, arcs = rest.split(":", 1)
            try:
                ids = [int(t) for t in arcs.replace(",", " ").split()]
            except ValueError:
                raise PDSyntaxError("non-integer arc id", ln)
            if not ids:
                raise PDSyntaxError("empty S line", ln)
            s_rows.append((ln, label.strip(), ids))
        else:
            raise PDSyntaxError(f"unknown record {tag!r}", ln)
    if header is None:
        raise PDSyntaxError("missing 'tangle' header line", 1)
    n = header["n"]
    k_strings = header["k"]
    if len(x_rows) != n:
        raise PDSyntaxError(f"header says n={n} but found {len(x_rows)} X lines", 1)
    boundary = b_row or []
    if len(boundary) != 2 * k_strings:
        raise PDSyntaxError(
            f"boundary needs {2 * k_strings} entries, found {len(boundary)}", 1
        )
    k = len(boundary)

    # collect incidences: arc id -> list of darts
    incid: dict[int, list[int]] = {}
    for idx, (ln, row) in enumerate(x_rows):
        for s, arc in enumerate(row):
            incid.setdefault(arc, []).append(4 * idx + s)
    for j, arc in enumerate(boundary):
        incid.setdefault(arc, []).append(4 * n + j)
    free_arcs = set()
    for ln, label, ids in s_rows:
        for a in ids:
            if a not in incid:
                free_arcs.add(a)
    alpha = [None] * (4 * n + k)
    for arc, darts in incid.items():
        if len(darts) != 2:
            raise PDSyntaxError(f"arc {arc} has {len(darts)} incidences, needs 2", 1)
        alpha[darts[0]] = darts[1]
        alpha[darts[1]] = darts[0]
    if any(a is None for a in alpha):
        raise PDSyntaxError("incomplete wiring", 1)

    # components from S lines
    strings: list[tuple[str, int]] = []
    loops: list[tuple[str, int]] = []
    free_loops: list[str] = []
    dart_by_arc_at_ep = {arc: 4 * n + j for j, arc in enumerate(boundary)}
    for ln, label, ids in s_rows:
        if len(ids) == 1 and ids[0] in free_arcs:
            free_loops.append(label)
            continue
        first = ids[0]
        darts = incid[first]
        ep_darts = [x for x in darts if x >= 4 * n]
        if ep_darts:
            strings.append((label, ep_darts[0] - 4 * n))
        else:
            # closed loop: anchor on the first arc, oriented toward the
            # second arc when there is one
            anchor = darts[0]
            if len(ids) > 1:
                d0, d1 = darts
                nxt_arc = ids[1]
                probe = TangleDiagram(n, k, tuple(alpha))
                for cand in (d0, d1):
                    step = probe.alpha[cand]
                    if step < 4 * n:
                        out = probe.through(step)
                        if out in incid.get(nxt_arc, ()):
                            anchor = cand
                            break
            loops.append((label, anchor))
    diag = TangleDiagram(
        n, k, tuple(alpha), tuple(strings), tuple(loops), tuple(free_loops)
    )
    diag.validate()
    return diag
