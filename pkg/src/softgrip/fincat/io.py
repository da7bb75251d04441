"""Plain-text category descriptions.

One statement per line, ``#`` starts a comment::

    object a b c
    arrow f : a -> b
    arrow g : b -> c
    arrow h : a -> c
    compose g f = h

Identity arrows are implicit (``id_<object>``) together with their unit
compositions. A file may instead describe a thin category by
``leq x y`` lines (one generating arrow ``x -> y`` each); it is closed
reflexively and transitively. The two styles cannot be mixed.
"""
from pathlib import Path

from ..exceptions import CategoryParseError
from .core import FinCat, preorder_category


def identity_name(x):
    return f"id_{x}"


def parse_category(text, name=""):
    objects, arrows, compose, leq = [], {}, {}, []
    declared_at = {}
    style = None

    def need_object(x, lineno):
        if x not in declared_at:
            raise CategoryParseError(f"line {lineno}: undeclared object {x!r}", line=lineno)

    def need_arrow(a, lineno):
        if a not in arrows:
            raise CategoryParseError(f"line {lineno}: undeclared arrow {a!r}", line=lineno)

    def set_style(s, lineno):
        nonlocal style
        if style is not None and style != s:
            raise CategoryParseError(
                f"line {lineno}: cannot mix 'leq' with 'arrow'/'compose' statements", line=lineno
            )
        style = s

    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        kw, rest = toks[0], toks[1:]
        if kw == "object":
            if not rest:
                raise CategoryParseError(f"line {lineno}: 'object' needs at least one id", line=lineno)
            for x in rest:
                if x in declared_at:
                    raise CategoryParseError(f"line {lineno}: object {x!r} declared twice", line=lineno)
                declared_at[x] = lineno
                objects.append(x)
                arrows[identity_name(x)] = (x, x)
        elif kw == "arrow":
            set_style("explicit", lineno)
            if len(rest) != 5 or rest[1] != ":" or rest[3] != "->":
                raise CategoryParseError(f"line {lineno}: expected 'arrow NAME : X -> Y'", line=lineno)
            a, x, y = rest[0], rest[2], rest[4]
            if a in arrows:
                raise CategoryParseError(f"line {lineno}: arrow {a!r} declared twice", line=lineno)
            need_object(x, lineno)
            need_object(y, lineno)
            arrows[a] = (x, y)
        elif kw == "compose":
            set_style("explicit", lineno)
            if len(rest) != 4 or rest[2] != "=":
                raise CategoryParseError(f"line {lineno}: expected 'compose G F = H'", line=lineno)
            g, f, h = rest[0], rest[1], rest[3]
            for a in (g, f, h):
                need_arrow(a, lineno)
            compose[(g, f)] = h
        elif kw == "leq":
            set_style("thin", lineno)
            if len(rest) != 2:
                raise CategoryParseError(f"line {lineno}: expected 'leq X Y'", line=lineno)
            for x in rest:
                need_object(x, lineno)
            leq.append(tuple(rest))
        else:
            raise CategoryParseError(f"line {lineno}: unknown statement {kw!r}", line=lineno)

    if style == "thin":
        return preorder_category(objects, leq, name=name)
    identity = {x: identity_name(x) for x in objects}
    for a, (x, y) in arrows.items():
        compose.setdefault((a, identity[x]), a)
        compose.setdefault((identity[y], a), a)
    return FinCat(objects, arrows, compose, identity, name=name)


def load_category(path):
    path = Path(path)
    return parse_category(path.read_text(encoding="utf-8"), name=path.stem)


def dump_category(c):
    """Text form of ``c``; ids are written with ``str``."""
    lines = ["object " + " ".join(str(x) for x in c.objects)] if c.objects else []
    idents = set(c.identity.values())
    for a, (x, y) in c.arrows.items():
        if a not in idents:
            lines.append(f"arrow {_tok(a)} : {x} -> {y}")
    for (g, f), h in c.compose.items():
        if g in idents or f in idents:
            continue
        lines.append(f"compose {_tok(g)} {_tok(f)} = {_tok(h)}")
    return "\n".join(lines) + "\n"


def _tok(a):
    if isinstance(a, tuple):
        return "_".join(str(p) for p in a)
    return str(a)
