"""Built-in diagram corpus: the unknot and the twist knots up to six crossings.

Each knot ships with a minimal-crossing Morse layout (derived from a
4-strand plat closure), the matching planar code, an independent braid
closure realization, and frozen color-2 Jones and Alexander polynomials
for regression checks.  Records are read from a pregenerated JSON file;
``build_record`` re-derives one from scratch, which is how the file is
produced and how the tests cross-check it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .diagram import (
    Cap,
    Cup,
    CrossNeg,
    CrossPos,
    DiagramError,
    Event,
    PDCrossing,
    format_morse,
    format_pd,
    morse_stats,
    parse_morse,
    parse_pd,
    pd_stats,
    pd_to_morse,
    plat_to_pd,
)
from .qlaurent import QLaurent

__all__ = [
    "KnotRecord",
    "names",
    "knot",
    "resolve",
    "jones",
    "unknot_diagrams",
    "twist_plat_word",
    "build_record",
    "record_to_json_obj",
]

# m clasp-side half twists give the 2-bridge knot with m + 2 crossings
_TWIST_COUNTS = {"3_1": 1, "4_1": 2, "5_2": 3, "6_1": 4}

# independent realizations as braid closures, for cross-diagram checks
_BRAIDS: dict[str, tuple[tuple[int, ...], int]] = {
    "3_1": ((1, 1, 1), 2),
    "4_1": ((1, -2, 1, -2), 3),
    "5_2": ((1, 1, 1, 2, -1, 2), 3),
    "6_1": ((1, 1, 2, -1, -3, 2, -3), 4),
}


@dataclass(frozen=True)
class KnotRecord:
    name: str
    morse: tuple[Event, ...]
    pd: tuple[PDCrossing, ...]
    plat_word: tuple[int, ...]
    braid_word: tuple[int, ...]
    braid_strands: int
    crossing_count: int
    writhe: int
    jones2: QLaurent
    alexander: QLaurent


def names() -> list[str]:
    """Corpus knot names in order of crossing count, unknot excluded."""
    return sorted(_TWIST_COUNTS, key=lambda k: _TWIST_COUNTS[k])


def unknot_diagrams() -> list[list[Event]]:
    """Three Morse layouts of the unknot: a bare wave and both kinks."""
    return [
        [Cup(1), Cap(0)],
        [Cup(1), CrossPos(0), Cap(1)],
        [Cup(1), CrossNeg(0), Cap(1)],
    ]


def twist_plat_word(m: int) -> list[int]:
    """Plat word of the twist knot with m twist-region crossings.

    The mirror convention is fixed so that the color-2 Jones values
    agree with the commonly tabulated ones; the trefoil's lands on
    negative whole powers of q.
    """
    if m < 1:
        raise ValueError("need at least one twist crossing")
    return [-2] * m + [1, -2]


def build_record(name: str) -> KnotRecord:
    """Re-derive a corpus record from its defining words.

    Slow path: lays the plat diagram out from scratch and recomputes the
    invariants; the shipped JSON is this function's frozen output.
    """
    from .statesum import alexander_poly, colored_jones

    if name not in _TWIST_COUNTS:
        raise KeyError(f"unknown corpus knot {name!r}")
    plat = tuple(twist_plat_word(_TWIST_COUNTS[name]))
    pd = tuple(plat_to_pd(plat))
    morse = tuple(pd_to_morse(list(pd)))
    stats = pd_stats(list(pd))
    mstats = morse_stats(list(morse))
    if (mstats.crossing_count, mstats.writhe) != (stats.crossing_count, stats.writhe):
        raise DiagramError("layout does not match the planar code")
    word, strands = _BRAIDS[name]
    return KnotRecord(
        name=name,
        morse=morse,
        pd=pd,
        plat_word=plat,
        braid_word=word,
        braid_strands=strands,
        crossing_count=stats.crossing_count,
        writhe=stats.writhe,
        jones2=colored_jones(list(morse), 2),
        alexander=alexander_poly(list(pd)),
    )


def record_to_json_obj(rec: KnotRecord) -> dict:
    return {
        "name": rec.name,
        "morse": format_morse(rec.morse),
        "pd": format_pd(rec.pd),
        "plat_word": list(rec.plat_word),
        "braid_word": list(rec.braid_word),
        "braid_strands": rec.braid_strands,
        "crossing_count": rec.crossing_count,
        "writhe": rec.writhe,
        "jones2": rec.jones2.to_json_obj(),
        "alexander": rec.alexander.to_json_obj(),
    }


def _record_from_json_obj(obj: dict) -> KnotRecord:
    return KnotRecord(
        name=obj["name"],
        morse=tuple(parse_morse(obj["morse"])),
        pd=tuple(parse_pd(obj["pd"])),
        plat_word=tuple(obj["plat_word"]),
        braid_word=tuple(obj["braid_word"]),
        braid_strands=obj["braid_strands"],
        crossing_count=obj["crossing_count"],
        writhe=obj["writhe"],
        jones2=QLaurent.from_json_obj(obj["jones2"]),
        alexander=QLaurent.from_json_obj(obj["alexander"]),
    )


_CACHE: dict[str, KnotRecord] = {}


def knot(name: str) -> KnotRecord:
    """Load a corpus knot by name ('3_1', '4_1', '5_2', '6_1')."""
    if not _CACHE:
        path = resources.files("jonescope").joinpath("corpus/corpus.json")
        data = json.loads(path.read_text())
        for key, obj in data.items():
            _CACHE[key] = _record_from_json_obj(obj)
    if name not in _CACHE:
        raise KeyError(f"unknown corpus knot {name!r}")
    return _CACHE[name]


def resolve(spec) -> tuple[str, tuple[Event, ...]]:
    """Name and Morse layout for a corpus name, record, or event sequence."""
    if isinstance(spec, str):
        if spec in ("0_1", "unknot"):
            return "0_1", (Cup(1), Cap(0))
        return spec, knot(spec).morse
    if isinstance(spec, KnotRecord):
        return spec.name, spec.morse
    return "diagram", tuple(spec)


@lru_cache(maxsize=None)
def _jones_cached(morse: tuple[Event, ...], n: int) -> QLaurent:
    from .statesum import colored_jones

    return colored_jones(list(morse), n)


def jones(spec, n: int) -> QLaurent:
    """Colored Jones polynomial of a knot, cached per layout and color."""
    return _jones_cached(resolve(spec)[1], n)
