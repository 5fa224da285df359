"""Text and Graphviz renderings of terms and strategies."""

from __future__ import annotations

from causal_games.games import CyclicStrategy, Game, _LETTER
from causal_games.sigcat import Signature, Term, slices, typecheck


def _wires(k: int) -> list[str]:
    return ["|"] * k


def term_ascii(t: Term, sig: Signature) -> str:
    """Interfaces and whiskered generators, top to bottom."""
    src, _ = typecheck(t, sig)
    lines = [" ".join(src) or "(empty)"]
    word = list(src)
    for s in slices(t, sig):
        g = sig.generator(s.generator)
        lines.append(" ".join(_wires(s.left) + [f"[{s.generator}]"] + _wires(s.right)))
        word[s.left:s.left + len(g.src)] = g.tgt
        lines.append(" ".join(word) or "(empty)")
    return "\n".join(lines) + "\n"


def term_dot(t: Term, sig: Signature) -> str:
    """One node per generator occurrence and one edge per wire segment."""
    src, tgt = typecheck(t, sig)
    out = ["digraph term {", "  rankdir=TB;"]
    out += [f'  in{i} [shape=point, xlabel="{x}"];' for i, x in enumerate(src)]
    ends = [f"in{i}" for i in range(len(src))]
    word = list(src)
    for k, s in enumerate(slices(t, sig)):
        g = sig.generator(s.generator)
        node = f"g{k}"
        out.append(f'  {node} [shape=box, label="{s.generator}"];')
        for j, x in enumerate(g.src):
            out.append(f'  {ends[s.left + j]} -> {node} [label="{x}"];')
        ends[s.left:s.left + len(g.src)] = [node] * len(g.tgt)
        word[s.left:s.left + len(g.src)] = g.tgt
    for i, (end, x) in enumerate(zip(ends, word, strict=False)):
        out.append(f'  out{i} [shape=point];')
        out.append(f'  {end} -> out{i} [label="{x}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def _covering(g: Game) -> list[tuple[int, int]]:
    """Immediate-predecessor pairs of the (transitively closed) game order."""
    return sorted(
        (a, b) for a, b in g.order
        if not any((a, c) in g.order and (c, b) in g.order for c in range(len(g)))
    )


def _move(s: CyclicStrategy, x: int) -> str:
    side, k = s.side(x)
    return f"{side}{k}"


def strategy_ascii(s: CyclicStrategy) -> str:
    lines = []
    for side, g in (("dom", s.dom), ("cod", s.cod)):
        moves = " ".join(f"{side}{k}:{_LETTER[p]}" for k, p in enumerate(g.polarities))
        lines.append(f"{side}: {moves or '(empty)'}")
        lines += [f"  {side}{a} < {side}{b}" for a, b in _covering(g)]
    lines.append("dependencies:")
    lines += [f"  {_move(s, x)} -> {_move(s, y)}" for x, y in sorted(s.pairs)]
    return "\n".join(lines) + "\n"


def strategy_dot(s: CyclicStrategy) -> str:
    """Game order dotted, strategy dependencies solid.

    Polarities are shown as they are in ``dom`` and ``cod``, not in the arrow game.
    """
    out = ["digraph strategy {", "  rankdir=TB;"]
    for side, g in (("dom", s.dom), ("cod", s.cod)):
        out.append(f"  subgraph cluster_{side} {{")
        out.append(f'    label="{side}";')
        out += [f'    {side}{k} [label="{_LETTER[p]}"];' for k, p in enumerate(g.polarities)]
        out.append("  }")
    for side, g in (("dom", s.dom), ("cod", s.cod)):
        out += [f"  {side}{a} -> {side}{b} [style=dotted];" for a, b in _covering(g)]
    out += [f"  {_move(s, x)} -> {_move(s, y)};" for x, y in sorted(s.pairs)]
    out.append("}")
    return "\n".join(out) + "\n"
