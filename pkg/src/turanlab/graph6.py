"""Bit-exact graph6 encoding for graphs on at most 64 vertices.

Only the adjacency rows are handled here; :mod:`turanlab.graph` wraps these
helpers into ``to_graph6`` / ``from_graph6`` on :class:`~turanlab.graph.Graph`.
"""

from __future__ import annotations

from collections.abc import Sequence

HEADER = ">>graph6<<"
MAX_VERTICES = 64


class Graph6Error(ValueError):
    """Malformed graph6 input.  ``offset`` is the 0-based byte offset of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _encode_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    return "~" + "".join(chr(((n >> shift) & 0x3F) + 63) for shift in (12, 6, 0))


def encode(n: int, rows: Sequence[int]) -> str:
    """graph6 text for the graph with ``n`` vertices and adjacency masks ``rows``."""
    out = [_encode_size(n)]
    acc = 0
    nbits = 0
    for j in range(1, n):
        row = rows[j]
        for i in range(j):
            acc = (acc << 1) | ((row >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = 0
                nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def decode(text: str | bytes) -> tuple[int, list[int]]:
    """Parse one graph6 string into ``(n, rows)``.

    A leading ``>>graph6<<`` header and surrounding whitespace are ignored;
    offsets in error messages refer to the stripped string.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise Graph6Error("non-ASCII byte", exc.start) from None
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    if not s:
        raise Graph6Error("empty graph6 string", 0)
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ch!r} outside the printable graph6 range", pos)

    if s[0] != "~":
        n = ord(s[0]) - 63
        body = 1
    elif len(s) >= 2 and s[1] == "~":
        raise Graph6Error(f"vertex count exceeds {MAX_VERTICES}", 0)
    else:
        if len(s) < 4:
            raise Graph6Error("truncated size field", len(s))
        n = 0
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        if n <= 62:
            raise Graph6Error("non-minimal size field", 1)
        body = 4
    if n > MAX_VERTICES:
        raise Graph6Error(f"vertex count {n} exceeds {MAX_VERTICES}", 0)
    if n < 1:
        raise Graph6Error("graph must have at least one vertex", 0)

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(s) - body != nbytes:
        off = body + min(len(s) - body, nbytes)
        raise Graph6Error(
            f"expected {nbytes} adjacency bytes for n={n}, found {len(s) - body}", off
        )

    rows = [0] * n
    k = 0
    i, j = 0, 1
    for pos in range(body, len(s)):
        chunk = ord(s[pos]) - 63
        for b in range(5, -1, -1):
            bit = (chunk >> b) & 1
            if k >= nbits:
                if bit:
                    raise Graph6Error("nonzero padding bit", pos)
                continue
            if bit:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                j += 1
                i = 0
    return n, rows
