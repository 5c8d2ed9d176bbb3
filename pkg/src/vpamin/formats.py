"""Plain-text file formats for DFAs, VPAs, immersions, graphs and colourings.

Blank lines, lines starting with ``#`` and the ``RESULT`` trailer printed by
the command-line tool are ignored by every parser.
"""

from __future__ import annotations

from typing import Iterator, Mapping

from .dfa import Dfa
from .errors import InputError
from .immersion import Immersion, Slot, TransitionGraph
from .reduction import ColoringInstance
from .vpa import VisiblyAlphabet, Vpa


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith(("#", "RESULT ")):
            yield no, line.split()


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InputError(f"line {no}: expected an integer, got {tok!r}") from None


def _header(lines, keyword: str, min_len: int) -> tuple[int, list[str]]:
    try:
        no, toks = next(lines)
    except StopIteration:
        raise InputError(f"empty input, expected a '{keyword}' header") from None
    if toks[0] != keyword or len(toks) < min_len:
        raise InputError(f"line {no}: expected '{keyword} ...' header")
    return no, toks


def _alphabet(toks: list[str], idx: int) -> tuple[str, ...]:
    if len(toks) <= idx:
        return ()
    return tuple(a for a in toks[idx].split(",") if a)


# --- DFA ------------------------------------------------------------------

def dump_dfa(d: Dfa) -> str:
    out = [f"dfa {d.num_states} {','.join(d.alphabet)}".rstrip(),
           f"initial {d.initial}",
           " ".join(["finals"] + [str(q) for q in sorted(d.finals)])]
    rank = {a: i for i, a in enumerate(d.alphabet)}
    for (s, a), t in sorted(d.transitions.items(), key=lambda kv: (kv[0][0], rank[kv[0][1]])):
        out.append(f"{s} {a} {t}")
    return "\n".join(out) + "\n"


def parse_dfa(text: str) -> Dfa:
    lines = _lines(text)
    no, toks = _header(lines, "dfa", 2)
    n = _int(toks[1], no)
    alphabet = _alphabet(toks, 2)
    initial = None
    finals: list[int] = []
    trans = []
    for no, toks in lines:
        if toks[0] == "initial" and len(toks) == 2:
            initial = _int(toks[1], no)
        elif toks[0] == "finals":
            finals = [_int(t, no) for t in toks[1:]]
        elif len(toks) == 3:
            trans.append((_int(toks[0], no), toks[1], _int(toks[2], no)))
        else:
            raise InputError(f"line {no}: cannot parse {' '.join(toks)!r}")
    if initial is None:
        raise InputError("missing 'initial' line")
    return Dfa(n, alphabet, trans, initial, finals)


# --- VPA ------------------------------------------------------------------

def _token(x) -> bool:
    return isinstance(x, str) and bool(x) and not any(c.isspace() for c in x)


def dump_vpa(v: Vpa) -> str:
    """Text form of ``v``. Stack symbols that are not plain tokens (such as
    the pairs of a product) are renamed ``g0, g1, ...``."""
    a = v.alphabet
    if all(_token(g) for g in v.stack_symbols):
        name = {g: g for g in v.stack_symbols}
    else:
        name = {g: f"g{i}" for i, g in enumerate(v.stack_symbols)}
    out = [f"vpa {v.num_states}",
           " ".join(["calls", *a.calls]),
           " ".join(["returns", *a.returns]),
           " ".join(["internals", *a.internals]),
           " ".join(["stack", *(name[g] for g in v.stack_symbols)]),
           " ".join(["initials", *map(str, sorted(v.initials))]),
           " ".join(["finals", *map(str, sorted(v.finals))])]
    out += sorted(f"call {q} {c} {t} {name[g]}" for q, c, t, g in v.call_rules)
    out += sorted(f"ret {q} {r} {name[g]} {t}" for q, r, g, t in v.return_rules)
    out += sorted(f"int {q} {x} {t}" for q, x, t in v.internal_rules)
    return "\n".join(out) + "\n"


def parse_vpa(text: str) -> Vpa:
    lines = _lines(text)
    no, toks = _header(lines, "vpa", 2)
    n = _int(toks[1], no)
    fields: dict[str, list[str]] = {}
    calls, rets, ints = [], [], []
    for no, toks in lines:
        head, rest = toks[0], toks[1:]
        if head in ("calls", "returns", "internals", "stack", "initials", "finals"):
            fields[head] = rest
        elif head == "call" and len(rest) == 4:
            calls.append((_int(rest[0], no), rest[1], _int(rest[2], no), rest[3]))
        elif head == "ret" and len(rest) == 4:
            rets.append((_int(rest[0], no), rest[1], rest[2], _int(rest[3], no)))
        elif head == "int" and len(rest) == 3:
            ints.append((_int(rest[0], no), rest[1], _int(rest[2], no)))
        else:
            raise InputError(f"line {no}: cannot parse {' '.join(toks)!r}")
    alphabet = VisiblyAlphabet(fields.get("calls", ()), fields.get("returns", ()),
                               fields.get("internals", ()))
    initials = [_int(t, 0) for t in fields.get("initials", ())]
    finals = [_int(t, 0) for t in fields.get("finals", ())]
    return Vpa(alphabet, n, initials, finals, tuple(fields.get("stack", ())), calls, rets, ints)


# --- immersion ------------------------------------------------------------

def dump_immersion(imm: Immersion) -> str:
    g = imm.graph
    out = [f"immersion {g.num_states} {','.join(g.alphabet)}".rstrip()]
    rank = {a: i for i, a in enumerate(g.alphabet)}
    for (s, a), t in sorted(g.transitions.items(), key=lambda kv: (kv[0][0], rank[kv[0][1]])):
        out.append(f"{s} {a} {t}")
    for i, slot in enumerate(imm.slots, 1):
        out.append(" ".join([f"slot {i} initial {slot.initial} finals",
                             *map(str, sorted(slot.finals))]))
    return "\n".join(out) + "\n"


def parse_immersion(text: str) -> Immersion:
    lines = _lines(text)
    no, toks = _header(lines, "immersion", 2)
    n = _int(toks[1], no)
    alphabet = _alphabet(toks, 2)
    trans = []
    slots: dict[int, Slot] = {}
    for no, toks in lines:
        if toks[0] == "slot":
            if len(toks) < 5 or toks[2] != "initial" or toks[4] != "finals":
                raise InputError(f"line {no}: expected 'slot <i> initial <q> finals ...'")
            i = _int(toks[1], no)
            if i in slots:
                raise InputError(f"line {no}: slot {i} defined twice")
            slots[i] = Slot(_int(toks[3], no), [_int(t, no) for t in toks[5:]])
        elif len(toks) == 3:
            trans.append((_int(toks[0], no), toks[1], _int(toks[2], no)))
        else:
            raise InputError(f"line {no}: cannot parse {' '.join(toks)!r}")
    if sorted(slots) != list(range(1, len(slots) + 1)):
        raise InputError(f"slots must be numbered 1..n, got {sorted(slots)}")
    return Immersion(TransitionGraph(n, alphabet, trans), tuple(slots[i] for i in sorted(slots)))


# --- graphs and colourings ------------------------------------------------

def dump_graph(g: ColoringInstance) -> str:
    out = [f"graph {g.n} {len(g.edges)}"] + [f"{i} {j}" for i, j in sorted(g.edges)]
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> ColoringInstance:
    lines = _lines(text)
    no, toks = _header(lines, "graph", 3)
    n, count = _int(toks[1], no), _int(toks[2], no)
    edges = []
    for no, toks in lines:
        if len(toks) != 2:
            raise InputError(f"line {no}: expected '<i> <j>'")
        edges.append((_int(toks[0], no), _int(toks[1], no)))
    if len(edges) != count:
        raise InputError(f"header announces {count} edges, found {len(edges)}")
    return ColoringInstance(n, edges)


def dump_coloring(coloring: Mapping[int, int]) -> str:
    return "".join(f"{v} {c}\n" for v, c in sorted(coloring.items()))


def parse_coloring(text: str) -> dict[int, int]:
    out = {}
    for no, toks in _lines(text):
        if len(toks) != 2:
            raise InputError(f"line {no}: expected '<vertex> <color>'")
        v, c = _int(toks[0], no), _int(toks[1], no)
        if c not in (0, 1, 2):
            raise InputError(f"line {no}: colour {c} not in {{0,1,2}}")
        if v in out:
            raise InputError(f"line {no}: vertex {v} coloured twice")
        out[v] = c
    return out
