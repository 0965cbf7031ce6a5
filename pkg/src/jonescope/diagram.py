"""Knot diagrams: Morse event lists and planar diagram codes.

A Morse tangle describes a long knot as a bottom-to-top sequence of
events acting on a slice of vertical strands.  The tangle starts and ends
with a single strand, and every crossing must be traversed upward by both
of its strands; cups and caps are the only turning points.  A planar
diagram code lists crossings as labeled 4-tuples with an explicit sign,
with the role convention (under-in, over-in, under-out, over-out).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

__all__ = [
    "Cup",
    "Cap",
    "CrossPos",
    "CrossNeg",
    "DiagramError",
    "ConversionError",
    "DiagramStats",
    "Passage",
    "Walk",
    "parse_morse",
    "format_morse",
    "morse_mirror",
    "build_walk",
    "morse_stats",
    "PDCrossing",
    "parse_pd",
    "format_pd",
    "pd_validate",
    "pd_check_labels",
    "pd_stats",
    "pd_mirror",
    "pd_walk_arcs",
    "pd_to_morse",
    "morse_to_pd",
    "braid_to_morse",
    "braid_to_pd",
    "plat_to_pd",
]


@dataclass(frozen=True)
class Cup:
    pos: int


@dataclass(frozen=True)
class Cap:
    pos: int


@dataclass(frozen=True)
class CrossPos:
    pos: int


@dataclass(frozen=True)
class CrossNeg:
    pos: int


Event = Cup | Cap | CrossPos | CrossNeg


class DiagramError(ValueError):
    """Raised for malformed or non-knot diagrams."""


class ConversionError(DiagramError):
    """Raised when a planar diagram does not convert to a Morse layout."""


@dataclass(frozen=True)
class DiagramStats:
    crossing_count: int
    writhe: int

    @property
    def c(self) -> int:
        """State-count exponent of the diagram."""
        return max(self.crossing_count - 2, 0)


@dataclass(frozen=True)
class Passage:
    crossing: int
    is_over: bool


@dataclass(frozen=True)
class Walk:
    """Knot-order traversal data of a validated Morse tangle.

    passages has length 2C; arc j is the stretch between passage j and
    passage j+1 (arc 0 starts at the bottom boundary, arc 2C ends at the
    top).  arc_sigma[j] is the summed extremum exponent weight sigma over
    the cups and caps lying on arc j, where a rightward minimum carries
    -2, a rightward maximum +2, and leftward turns 0.
    """

    signs: tuple[int, ...]
    passages: tuple[Passage, ...]
    arc_sigma: dict[int, int]

    @property
    def crossing_count(self) -> int:
        return len(self.signs)

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def passage_pairs(self) -> list[tuple[int, int]]:
        """For each crossing, the indices of its two passages in walk order."""
        out: list[list[int]] = [[] for _ in self.signs]
        for j, p in enumerate(self.passages):
            out[p.crossing].append(j)
        return [(a[0], a[1]) for a in out]


# Morse grammar -----------------------------------------------------------

_MORSE_TOKEN = re.compile(r"^(cup|cap|x\+|x-)\s+(-?\d+)$")

_EVENT_NAMES = {Cup: "cup", Cap: "cap", CrossPos: "x+", CrossNeg: "x-"}


def parse_morse(text: str) -> list[Event]:
    events: list[Event] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _MORSE_TOKEN.match(line)
        if not m:
            raise DiagramError(f"line {lineno}: cannot parse {raw.strip()!r}")
        word, pos = m.group(1), int(m.group(2))
        if pos < 0:
            raise DiagramError(f"line {lineno}: negative position")
        cls = {"cup": Cup, "cap": Cap, "x+": CrossPos, "x-": CrossNeg}[word]
        events.append(cls(pos))
    return events


def format_morse(events: Iterable[Event]) -> str:
    return "\n".join(f"{_EVENT_NAMES[type(e)]} {e.pos}" for e in events) + "\n"


def morse_mirror(events: Iterable[Event]) -> list[Event]:
    out: list[Event] = []
    for e in events:
        if isinstance(e, CrossPos):
            out.append(CrossNeg(e.pos))
        elif isinstance(e, CrossNeg):
            out.append(CrossPos(e.pos))
        else:
            out.append(e)
    return out


def build_walk(events: Iterable[Event]) -> Walk:
    """Validate a Morse tangle and extract its knot-order walk.

    Checks slice widths, the single-strand boundary condition, connectivity
    (one component), and that both strands travel upward through every
    crossing.
    """
    events = list(events)
    top: dict[int, tuple] = {}
    bottom: dict[int, tuple] = {}
    signs: list[int] = []
    counter = 0

    def new_edge() -> int:
        nonlocal counter
        counter += 1
        return counter - 1

    e0 = new_edge()
    bottom[e0] = ("start",)
    slice_: list[int] = [e0]
    cross_tops: list[dict[str, int]] = []

    for idx, ev in enumerate(events):
        w = len(slice_)
        if isinstance(ev, Cup):
            if not 0 <= ev.pos <= w:
                raise DiagramError(f"event {idx}: cup at {ev.pos} outside width {w}")
            x, y = new_edge(), new_edge()
            bottom[x] = ("cup", y, "left")
            bottom[y] = ("cup", x, "right")
            slice_[ev.pos:ev.pos] = [x, y]
        elif isinstance(ev, Cap):
            if not 0 <= ev.pos <= w - 2:
                raise DiagramError(f"event {idx}: cap at {ev.pos} outside width {w}")
            a, b = slice_[ev.pos], slice_[ev.pos + 1]
            top[a] = ("cap", b, "left")
            top[b] = ("cap", a, "right")
            del slice_[ev.pos:ev.pos + 2]
        elif isinstance(ev, (CrossPos, CrossNeg)):
            if not 0 <= ev.pos <= w - 2:
                raise DiagramError(
                    f"event {idx}: crossing at {ev.pos} outside width {w}"
                )
            cid = len(signs)
            signs.append(+1 if isinstance(ev, CrossPos) else -1)
            a, b = slice_[ev.pos], slice_[ev.pos + 1]
            u, v = new_edge(), new_edge()
            top[a] = ("cross", cid, "bl")
            top[b] = ("cross", cid, "br")
            bottom[u] = ("cross", cid, "tl")
            bottom[v] = ("cross", cid, "tr")
            cross_tops.append({"tl": u, "tr": v})
            slice_[ev.pos], slice_[ev.pos + 1] = u, v
        else:
            raise DiagramError(f"event {idx}: unknown event {ev!r}")

    if len(slice_) != 1:
        raise DiagramError(f"tangle ends with width {len(slice_)}, expected 1")
    top[slice_[0]] = ("end",)

    # knot-order traversal from the bottom boundary
    passages: list[Passage] = []
    arc_sigma: dict[int, int] = {}
    visited: set[int] = set()
    cur, going_up = e0, True
    while True:
        if cur in visited:
            raise DiagramError("traversal revisits an edge")
        visited.add(cur)
        conn = top[cur] if going_up else bottom[cur]
        kind = conn[0]
        if going_up:
            if kind == "end":
                break
            if kind == "cap":
                _, partner, side = conn
                sigma = 2 if side == "left" else 0
                if sigma:
                    arc = len(passages)
                    arc_sigma[arc] = arc_sigma.get(arc, 0) + sigma
                cur, going_up = partner, False
            elif kind == "cross":
                _, cid, side = conn
                over = (side == "bl") == (signs[cid] > 0)
                passages.append(Passage(cid, over))
                cur = cross_tops[cid]["tr" if side == "bl" else "tl"]
            else:
                raise DiagramError("walk returned to the bottom boundary")
        else:
            if kind == "cup":
                _, partner, side = conn
                sigma = -2 if side == "left" else 0
                if sigma:
                    arc = len(passages)
                    arc_sigma[arc] = arc_sigma.get(arc, 0) + sigma
                cur, going_up = partner, True
            elif kind == "cross":
                raise DiagramError(
                    f"strand enters crossing {conn[1]} downward; "
                    "crossings must be traversed upward"
                )
            else:
                raise DiagramError("downward strand hit the bottom boundary")

    if len(visited) != counter:
        raise DiagramError(
            f"diagram has {counter - len(visited)} edges in other components"
        )
    if len(passages) != 2 * len(signs):
        raise DiagramError("some crossing was not traversed twice")
    arc_sigma = {a: s for a, s in arc_sigma.items() if s}
    return Walk(tuple(signs), tuple(passages), arc_sigma)


def morse_stats(events: Iterable[Event]) -> DiagramStats:
    walk = build_walk(events)
    return DiagramStats(walk.crossing_count, walk.writhe)


# planar diagram codes ----------------------------------------------------


@dataclass(frozen=True)
class PDCrossing:
    """One crossing: sign and the arcs (under-in, over-in, under-out, over-out)."""

    sign: int
    a: int
    b: int
    c: int
    d: int

    def arcs(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


_PD_TOKEN = re.compile(r"^X([+-])\[(\d+),(\d+),(\d+),(\d+)\]$")


def parse_pd(text: str) -> list[PDCrossing]:
    out: list[PDCrossing] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip().replace(" ", "")
        if not line:
            continue
        m = _PD_TOKEN.match(line)
        if not m:
            raise DiagramError(f"line {lineno}: cannot parse {raw.strip()!r}")
        sign = 1 if m.group(1) == "+" else -1
        a, b, c, d = (int(m.group(i)) for i in range(2, 6))
        out.append(PDCrossing(sign, a, b, c, d))
    return out


def format_pd(code: Iterable[PDCrossing]) -> str:
    lines = []
    for x in code:
        s = "+" if x.sign > 0 else "-"
        lines.append(f"X{s}[{x.a},{x.b},{x.c},{x.d}]")
    return "\n".join(lines) + "\n"


def pd_check_labels(code: list[PDCrossing]) -> None:
    """Check sign values and that every arc label appears exactly twice."""
    if not code:
        raise DiagramError("empty planar diagram")
    seen: dict[int, int] = {}
    for x in code:
        if x.sign not in (1, -1):
            raise DiagramError(f"bad crossing sign {x.sign}")
        for arc in x.arcs():
            seen[arc] = seen.get(arc, 0) + 1
    bad = {arc: k for arc, k in seen.items() if k != 2}
    if bad:
        raise DiagramError(f"arc labels not appearing exactly twice: {sorted(bad)}")


def pd_validate(code: list[PDCrossing]) -> None:
    """Check arc labels pair up and the diagram is a single knot component."""
    pd_check_labels(code)
    heads: dict[int, tuple[int, int]] = {}
    for i, x in enumerate(code):
        for arc, out_arc in ((x.a, x.c), (x.b, x.d)):
            if arc in heads:
                raise DiagramError(f"arc {arc} enters two crossings")
            heads[arc] = (i, out_arc)
    if len(heads) != 2 * len(code):
        raise DiagramError("some arc never enters a crossing")
    start = code[0].a
    arc, count = start, 0
    while True:
        arc = heads[arc][1]
        count += 1
        if arc == start:
            break
        if count > 2 * len(code):
            raise DiagramError("arc successor walk does not close")
    if count != 2 * len(code):
        raise DiagramError("planar diagram has more than one component")


def pd_stats(code: list[PDCrossing]) -> DiagramStats:
    pd_validate(code)
    return DiagramStats(len(code), sum(x.sign for x in code))


def pd_mirror(code: list[PDCrossing]) -> list[PDCrossing]:
    """Swap over and under strands everywhere."""
    return [PDCrossing(-x.sign, x.b, x.a, x.d, x.c) for x in code]


def pd_walk_arcs(code: list[PDCrossing], start: int | None = None) -> list[int]:
    """Arc labels in knot order, starting from ``start`` (default: first under-in)."""
    pd_validate(code)
    heads = {}
    for i, x in enumerate(code):
        heads[x.a] = x.c
        heads[x.b] = x.d
    arc = code[0].a if start is None else start
    out = [arc]
    while True:
        arc = heads[arc]
        if arc == out[0]:
            return out
        out.append(arc)


# braid closures ----------------------------------------------------------


def braid_to_morse(word: Iterable[int], strands: int) -> list[Event]:
    """Morse layout of the closure of a braid word.

    Letters are nonzero integers: +i / -i for the positive/negative
    crossing of strands i and i+1 (1-indexed).  The closure must be a
    knot; build_walk rejects multi-component results.
    """
    word = list(word)
    if strands < 1:
        raise DiagramError("braid needs at least one strand")
    events: list[Event] = []
    for i in range(1, strands):
        events.append(Cup(i))
    for letter in word:
        i = abs(letter)
        if not 1 <= i < strands:
            raise DiagramError(f"braid letter {letter} outside 1..{strands - 1}")
        events.append(CrossPos(i - 1) if letter > 0 else CrossNeg(i - 1))
    for i in range(strands - 1, 0, -1):
        events.append(Cap(i))
    return events


def braid_to_pd(word: Iterable[int], strands: int) -> list[PDCrossing]:
    """Planar diagram of a braid closure, one labeled crossing per letter."""
    word = list(word)
    if not word:
        raise DiagramError("empty braid word has no crossings")
    fresh = strands
    slots = list(range(strands))
    code: list[tuple[int, int, int, int, int]] = []
    for letter in word:
        i = abs(letter) - 1
        if not 0 <= i < strands - 1:
            raise DiagramError(f"braid letter {letter} outside 1..{strands - 1}")
        x, y = slots[i], slots[i + 1]
        u, v = fresh, fresh + 1
        fresh += 2
        if letter > 0:
            # left strand passes over: (under-in, over-in, under-out, over-out)
            code.append((1, y, x, u, v))
        else:
            code.append((-1, x, y, v, u))
        slots[i], slots[i + 1] = u, v
    # closure identifies the top of each slot with its bottom label
    rename = {}

    def find(a: int) -> int:
        while a in rename:
            a = rename[a]
        return a

    for i in range(strands):
        a, b = find(i), find(slots[i])
        if a != b:
            rename[b] = a
    canon: dict[int, int] = {}

    def label(a: int) -> int:
        a = find(a)
        if a not in canon:
            canon[a] = len(canon) + 1
        return canon[a]

    out = [PDCrossing(s, label(a), label(b), label(c), label(d)) for s, a, b, c, d in code]
    pd_validate(out)
    return out


def plat_to_pd(word: Iterable[int]) -> list[PDCrossing]:
    """Planar diagram of the 4-strand plat closure of a braid word.

    Letters are nonzero integers +i / -i for i in 1..3, acting on
    strands i, i+1.  Strand pairs (1,2) and (3,4) are joined below the
    word and again above it.  Unlike a braid closure the plat turns
    strands back on themselves, so twist knots and other 2-bridge
    diagrams come out with their minimal crossing number.  The closure
    must trace out a single component.
    """
    word = list(word)
    if not word:
        raise DiagramError("empty plat word has no crossings")
    parent: dict = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    ends: list = [("bot", i) for i in range(4)]
    union(ends[0], ends[1])
    union(ends[2], ends[3])
    for c, letter in enumerate(word):
        i = abs(letter) - 1
        if not 0 <= i < 3:
            raise DiagramError(f"plat letter {letter} outside 1..3")
        union(ends[i], (c, "bl"))
        union(ends[i + 1], (c, "br"))
        ends[i] = (c, "tl")
        ends[i + 1] = (c, "tr")
    union(ends[0], ends[1])
    union(ends[2], ends[3])
    n_cr = len(word)
    classes: dict = {}
    for c in range(n_cr):
        for s in ("bl", "br", "tl", "tr"):
            classes.setdefault(find((c, s)), []).append((c, s))
    for ports in classes.values():
        if len(ports) != 2:
            raise DiagramError("plat arc touches an unexpected number of crossings")
    partner = {}
    for p1, p2 in classes.values():
        partner[p1] = p2
        partner[p2] = p1
    # walk the knot following the diagonals through each crossing
    diag = {"bl": "tr", "tr": "bl", "br": "tl", "tl": "br"}
    entries: dict[int, dict[str, str]] = {}
    start = (0, "bl")
    p = start
    count = 0
    while True:
        c, s = p
        key = "main" if s in ("bl", "tr") else "anti"
        entries.setdefault(c, {})[key] = s
        count += 1
        p = partner[(c, diag[s])]
        if p == start:
            break
        if count > 2 * n_cr:
            raise DiagramError("plat trace does not close")
    if count != 2 * n_cr:
        raise DiagramError("plat closure is not a knot")
    # crossing sign from the walk directions of the two strands
    vec = {"bl": (1, 1), "br": (-1, 1), "tl": (1, -1), "tr": (-1, -1)}
    labels: dict = {}

    def lab(port) -> int:
        r = find(port)
        if r not in labels:
            labels[r] = len(labels) + 1
        return labels[r]

    out = []
    for c, letter in enumerate(word):
        e = entries[c]
        over = e["main"] if letter > 0 else e["anti"]
        under = e["anti"] if letter > 0 else e["main"]
        ox, oy = vec[over]
        ux, uy = vec[under]
        sign = 1 if ox * uy - oy * ux > 0 else -1
        out.append(PDCrossing(sign, lab((c, under)), lab((c, over)),
                              lab((c, diag[under])), lab((c, diag[over]))))
    pd_validate(out)
    return out


def morse_to_pd(events: Iterable[Event]) -> list[PDCrossing]:
    """Planar diagram of a Morse tangle's closure, labeled in walk order.

    Arc j of the walk gets label j + 1, with the two boundary arcs merged
    by the closure.  Crossing-free tangles have no planar code.
    """
    walk = build_walk(events)
    c = walk.crossing_count
    if c == 0:
        raise ConversionError("crossing-free diagrams have no planar code")

    def arc(j: int) -> int:
        return j % (2 * c) + 1

    out: list[PDCrossing] = []
    for cid, (j1, j2) in enumerate(walk.passage_pairs()):
        if walk.passages[j1].is_over:
            b, d, a, cc = arc(j1), arc(j1 + 1), arc(j2), arc(j2 + 1)
        else:
            a, cc, b, d = arc(j1), arc(j1 + 1), arc(j2), arc(j2 + 1)
        out.append(PDCrossing(walk.signs[cid], a, b, cc, d))
    pd_validate(out)
    return out


# planar diagram -> Morse layout -----------------------------------------


def _pd_visit_sequence(code: list[PDCrossing]) -> tuple[list[int], list[tuple[int, bool]]]:
    """Arcs in knot order plus, per step, (crossing index, walk-is-over)."""
    enters: dict[int, tuple[int, bool, int]] = {}
    for i, x in enumerate(code):
        enters[x.a] = (i, False, x.c)
        enters[x.b] = (i, True, x.d)
    arcs = pd_walk_arcs(code)
    visits = []
    for arc in arcs:
        i, over, _out = enters[arc]
        visits.append((i, over))
    return arcs, visits


def _choose_cut(code: list[PDCrossing]) -> int:
    """Rotation making the first visit an overpass and the last an underpass."""
    arcs, visits = _pd_visit_sequence(code)
    m = len(visits)
    for r in range(m):
        if visits[r][1] and not visits[(r - 1) % m][1]:
            return r
    return 0


def _greedy_layout(code: list[PDCrossing], visits: list[tuple[int, bool]]) -> list[Event] | None:
    """Lay crossings out in visit order, or None when the layout jams.

    The walk's first visit of a crossing places it next to the head.  The
    crossing's other strand comes from a fresh cup, whose feeder is later
    resolved by a cap, unless that strand's input arc is already parked
    next to the head on the correct side; then the parked strand enters
    the crossing directly and both passages are realized at once.  Walk
    resumptions flow through such fully wired crossings.
    """
    events: list[Event] = []
    # slice entries: ("head",) | ("feed", crossing) | ("park", arc).
    # Feeders run down into the cup below a crossing; parked strands are
    # free ends above the construction carrying a known diagram arc.
    slice_: list[tuple] = [("head",)]
    head = 0
    seen: set[int] = set()
    done: set[int] = set()
    flow: dict[int, int] = {}
    for cid, over in visits:
        if cid in done:
            continue
        x = code[cid]
        if over:
            my_out, other_in, other_out = x.d, x.a, x.c
        else:
            my_out, other_in, other_out = x.c, x.b, x.d
        sign = x.sign
        if cid not in seen:
            seen.add(cid)
            other_right = (sign > 0) == over
            target = ("park", other_in)
            if target in slice_:
                # the other strand already hangs in the slice; it must sit
                # beside the head where the crossing geometry expects it
                pos = slice_.index(target)
                if pos != (head + 1 if other_right else head - 1):
                    return None
                lo = min(head, pos)
                events.append(CrossPos(lo) if sign > 0 else CrossNeg(lo))
                # the strands trade places: the head exits on the parked
                # side and the parked strand carries the crossing's output
                slice_[pos] = ("head",)
                slice_[head] = ("park", other_out)
                head = pos
                done.add(cid)
                flow[other_in] = other_out
            elif other_right:
                events.append(Cup(head + 1))
                events.append(CrossPos(head) if sign > 0 else CrossNeg(head))
                # after the swap: parked out-strand left, head, feeder right
                slice_[head:head + 1] = [("park", other_out), ("head",), ("feed", cid)]
                head += 1
            else:
                events.append(Cup(head))
                # the cup lands at head, head + 1; the walk strand is pushed
                # to head + 2, so the crossing sits one slot right of head
                events.append(CrossPos(head + 1) if sign > 0 else CrossNeg(head + 1))
                slice_[head:head + 1] = [("feed", cid), ("head",), ("park", other_out)]
                head += 1
        else:
            feeder = slice_.index(("feed", cid))
            if abs(feeder - head) != 1:
                return None
            events.append(Cap(min(head, feeder)))
            del slice_[min(head, feeder):min(head, feeder) + 2]
            arc = my_out
            while arc in flow:
                arc = flow[arc]
            try:
                head = slice_.index(("park", arc))
            except ValueError:
                return None
            slice_[head] = ("head",)
    if slice_ != [("head",)]:
        return None
    return events


def _crossing_io(x: PDCrossing) -> tuple[tuple[int, int], tuple[int, int]]:
    """Left-to-right (in_arcs, out_arcs) of an upward-drawn crossing."""
    if x.sign > 0:
        return (x.b, x.a), (x.c, x.d)
    return (x.a, x.b), (x.d, x.c)


class _LayoutSearch:
    """Exact search for upward Morse layouts of one planar diagram.

    Slice tokens are rising strand ends, each labeled by diagram arc and
    by the connected piece of drawing it belongs to.  A cup births a
    same-arc pair forming a fresh piece, a cap joins adjacent same-arc
    ends of distinct pieces (capping a piece to itself would close off a
    circle), and a crossing consumes its two input arcs side by side.
    The dead-state memo is cut-independent, so one instance serves every
    starting arc of the diagram.
    """

    def __init__(self, code: list[PDCrossing], max_width: int):
        self.code = code
        self.io = [_crossing_io(x) for x in code]
        self.all_cids = frozenset(range(len(code)))
        self.max_width = max_width
        self.failed: set = set()
        self._counter = 1

    def _fresh(self) -> int:
        self._counter += 1
        return self._counter

    def run(self, start_arc: int, max_cups: int) -> list[Event] | None:
        return self._dfs(((start_arc, 0),), frozenset(), max_cups, -1)

    def _dfs(self, slice_: tuple, placed: frozenset, cups: int,
             last: int) -> list[Event] | None:
        # last >= 0: the previous move was a cup with legs at last,
        # last + 1 and the next move must touch one of them.  Any layout
        # can be put in this form by delaying each cup past the moves
        # disjoint from its legs, so the restriction loses nothing and
        # collapses move orders that differ only by such exchanges.
        if placed == self.all_cids and len(slice_) == 1:
            return []
        relabel: dict[int, int] = {}
        for _, pc in slice_:
            relabel.setdefault(pc, len(relabel))
        key = (tuple((a, relabel[pc]) for a, pc in slice_), placed, cups, last)
        if key in self.failed:
            return None
        pair_range = range(len(slice_) - 1) if last < 0 else \
            range(max(last - 1, 0), min(last + 2, len(slice_) - 1))
        # crossings: consume an adjacent token pair carrying the in arcs;
        # each output continues its strand, so the left output inherits
        # the right input's piece and vice versa
        for cid in self.all_cids - placed:
            (il, ir), (ol, orr) = self.io[cid]
            for p in pair_range:
                if slice_[p][0] == il and slice_[p + 1][0] == ir:
                    ev = CrossPos(p) if self.code[cid].sign > 0 else CrossNeg(p)
                    pl, pr = slice_[p][1], slice_[p + 1][1]
                    nxt = slice_[:p] + ((ol, pr), (orr, pl)) + slice_[p + 2:]
                    sub = self._dfs(nxt, placed | {cid}, cups, -1)
                    if sub is not None:
                        return [ev] + sub
        # caps: join adjacent same-arc ends of different pieces
        for p in pair_range:
            (a1, p1), (a2, p2) = slice_[p], slice_[p + 1]
            if a1 == a2 and p1 != p2:
                rest = slice_[:p] + slice_[p + 2:]
                merged = tuple((a, p1 if pc == p2 else pc) for a, pc in rest)
                sub = self._dfs(merged, placed, cups, -1)
                if sub is not None:
                    return [Cap(p)] + sub
        # cups: a dip on an arc with an unplaced endpoint can feed that
        # crossing or cap against its future emission; a dip on an arc
        # already in the slice relocates that loose end
        if cups > 0 and len(slice_) + 2 <= self.max_width:
            useful = set()
            for cid in self.all_cids - placed:
                useful.update(self.io[cid][0])
                useful.update(self.io[cid][1])
            useful.update(a for a, _ in slice_)
            positions = range(len(slice_) + 1) if last < 0 else (last + 1,)
            for a in sorted(useful):
                piece = self._fresh()
                for p in positions:
                    nxt = slice_[:p] + ((a, piece), (a, piece)) + slice_[p:]
                    sub = self._dfs(nxt, placed, cups - 1, p)
                    if sub is not None:
                        return [Cup(p)] + sub
        self.failed.add(key)
        return None


def pd_to_morse(code: list[PDCrossing]) -> list[Event]:
    """Lay a knot's planar diagram out as a Morse tangle.

    A fast greedy pass tries every starting arc in both walk directions;
    whatever it cannot lay out falls to an exact search over slice
    states with a growing turn budget.  Cuts meeting the first crossing
    on the over strand and the last on the under strand are preferred;
    those layouts keep the state sum's search space small.  Runtime
    grows quickly past ten or so crossings.
    """
    pd_validate(code)
    reversed_code = [PDCrossing(x.sign, x.c, x.d, x.a, x.b) for x in code]
    cuts: list[tuple[int, int, bool]] = []
    per_variant = []
    for vi, variant in enumerate((code, reversed_code)):
        arcs, visits = _pd_visit_sequence(variant)
        per_variant.append((variant, arcs, visits))
        m = len(visits)
        for r in range(m):
            preferred = visits[r][1] and not visits[r - 1][1]
            cuts.append((vi, r, preferred))
    cuts.sort(key=lambda t: not t[2])

    def checked(events: list[Event] | None) -> list[Event] | None:
        if events is None:
            return None
        try:
            build_walk(events)
        except DiagramError:
            return None
        return events

    for vi, r, _ in cuts:
        variant, _, visits = per_variant[vi]
        events = checked(_greedy_layout(variant, visits[r:] + visits[:r]))
        if events is not None:
            return events
    width = max(6, len(code) + 3)
    searches = [_LayoutSearch(v, width) for v, _, _ in per_variant]
    for max_cups in range(1, len(code) + 3):
        for vi, r, _ in cuts:
            _, arcs, _ = per_variant[vi]
            events = checked(searches[vi].run(arcs[r], max_cups))
            if events is not None:
                return events
    raise ConversionError("no upward Morse layout found within the turn budget")
