"""Line-oriented text format for graphs.

::

    # comment
    vertex v
    vertex w
    edge e v w        # e: v -> w
    edge f w ?        # f is outside dom(r)
    omega g v ?       # countably many edges v -> ?
    relative w
    escape omega

Printing is canonical (sorted ids), so ``loads(dumps(g)) == g``.
"""

from __future__ import annotations

from .core import OMEGA, ONE, EdgeGroup, Graph

UNDEFINED = "?"


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def check_id(token: str, lineno: int = 0) -> str:
    if token == UNDEFINED or token.startswith("@") or "|" in token or "#" in token:
        raise ParseError(lineno, f"illegal identifier {token!r}")
    return token


def loads(text: str) -> Graph:
    vertices: list[str] = []
    groups: list[EdgeGroup] = []
    relative: set[str] | None = None
    escape = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, *args = line.split()
        if keyword == "vertex":
            if len(args) != 1:
                raise ParseError(lineno, "expected: vertex <id>")
            vertices.append(check_id(args[0], lineno))
        elif keyword in ("edge", "omega"):
            if len(args) != 3:
                raise ParseError(lineno, f"expected: {keyword} <id> <dom> <range|?>")
            eid, dom, rng = args
            check_id(eid, lineno)
            check_id(dom, lineno)
            target = None if rng == UNDEFINED else check_id(rng, lineno)
            if keyword == "edge":
                groups.append(EdgeGroup(eid, dom, target))
            else:
                groups.append(EdgeGroup(eid, dom, target, OMEGA))
        elif keyword == "relative":
            relative = (relative or set()) | {check_id(a, lineno) for a in args}
        elif keyword == "escape":
            if args != ["omega"]:
                raise ParseError(lineno, "expected: escape omega")
            escape = True
        else:
            raise ParseError(lineno, f"unknown declaration {keyword!r}")
    return Graph(tuple(vertices), tuple(groups), None if relative is None else frozenset(relative), escape)


def dumps(g: Graph) -> str:
    lines = [f"vertex {v}" for v in g.vertices]
    for grp in g.groups:
        if grp.multiplicity not in (ONE, OMEGA):
            raise ValueError(f"edge group {grp.id} has multiplicity {grp.multiplicity}; the text format only knows 1 and omega")
        keyword = "omega" if grp.is_omega else "edge"
        lines.append(f"{keyword} {grp.id} {grp.dom} {UNDEFINED if grp.range is None else grp.range}")
    if g.relative is not None:
        lines.append(" ".join(["relative", *sorted(g.relative)]).rstrip())
    if g.escape:
        lines.append("escape omega")
    return "\n".join(lines) + "\n"


def load(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dump(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(g))
