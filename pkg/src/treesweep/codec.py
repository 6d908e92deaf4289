"""Bit-exact wire encodings of descriptor messages.

Known-size scheme: the table is sent as a fixed budget of cells (one bit
each, the minimal table is 0/1), padded with zeros; when the vector holds a
real value pn >= 1 an artificial 1 is written at index pn, recoverable
because every cell at or below pn is 0.  Two trailing bits ab give the
vector kind: 00 (-1,-1), 01 (0,0), 10 (pn,pn), 11 (pn,pn+1), with pn read
off as the index of the first 1.  Unknown-size scheme: each cell is sent as
a 2-bit symbol (00 for 0, 01 for 1) with terminator 11, so the receiver
needs no knowledge of n.  Dynamic mode prepends one flag bit: 0 means
"replace the stored entry for this neighbour", 1 is a change-root
notification.

Known-size budget is ceil(log3 n) cells; the node-search variant gets one
extra cell because its values run one above the process number on small
subtrees.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hd import (HDescriptor, NO_STABLE, ParamVariant, Vect, ceil_log3,
                 validate_descriptor)


class CodecError(Exception):
    pass


class FramingError(CodecError):
    pass


class CapacityError(CodecError):
    pass


@dataclass(frozen=True)
class KnownSize:
    n: int
    cells: int

    @classmethod
    def for_tree(cls, n: int, variant: ParamVariant) -> "KnownSize":
        extra = 1 if variant is ParamVariant.NODE_SEARCH else 0
        return cls(n, ceil_log3(n) + extra)

    def message_bits(self, dynamic: bool) -> int:
        return self.cells + 2 + (1 if dynamic else 0)


@dataclass(frozen=True)
class UnknownSize:
    def message_bits_for(self, table_len: int, dynamic: bool) -> int:
        return 2 * table_len + 4 + (1 if dynamic else 0)


Scheme = KnownSize | UnknownSize

REPLACE_FLAG = 0
REROOT_FLAG = 1


@dataclass(frozen=True)
class WireMessage:
    bits: str
    scheme: Scheme
    dyn_flag: int | None = None

    def __len__(self) -> int:
        return len(self.bits)


def _ab_and_artificial(hd: HDescriptor) -> tuple[str, list[int]]:
    vect = hd.vect
    transmitted = list(hd.table)
    if vect == NO_STABLE:
        return "00", transmitted
    if vect == Vect(0, 0):
        return "01", transmitted
    if vect.pn < 1:
        raise CodecError(f"vector {vect} has no wire encoding")
    if transmitted[vect.pn - 1] != 0:
        raise CodecError(f"cell at index pn must be 0 before the artificial 1: {hd}")
    transmitted[vect.pn - 1] = 1
    return ("10" if vect.pn_plus == vect.pn else "11"), transmitted


def encode(hd: HDescriptor, scheme: Scheme, dyn_flag: int | None = None) -> WireMessage:
    validate_descriptor(hd, minimal=True)
    ab, transmitted = _ab_and_artificial(hd)
    if isinstance(scheme, KnownSize):
        if len(transmitted) > scheme.cells:
            raise CapacityError(
                f"table of length {len(transmitted)} exceeds the "
                f"{scheme.cells}-cell budget for n={scheme.n}")
        body = "".join(str(c) for c in transmitted)
        body += "0" * (scheme.cells - len(transmitted))
    else:
        body = "".join("01" if c else "00" for c in transmitted) + "11"
    prefix = "" if dyn_flag is None else str(dyn_flag)
    return WireMessage(prefix + body + ab, scheme, dyn_flag)


def decode(message: WireMessage) -> HDescriptor:
    hd, _ = decode_bits(message.bits, message.scheme,
                        has_dyn_flag=message.dyn_flag is not None)
    return hd


def decode_bits(bits: str, scheme: Scheme,
                has_dyn_flag: bool = False) -> tuple[HDescriptor, int | None]:
    if any(b not in "01" for b in bits):
        raise FramingError(f"non-bit character in {bits!r}")
    dyn = None
    if has_dyn_flag:
        if not bits:
            raise FramingError("empty message")
        dyn = int(bits[0])
        bits = bits[1:]
    if isinstance(scheme, KnownSize):
        if len(bits) != scheme.cells + 2:
            raise FramingError(
                f"expected {scheme.cells + 2} bits, got {len(bits)}")
        raw = [int(b) for b in bits[:scheme.cells]]
        ab = bits[scheme.cells:]
    else:
        raw = []
        pos = 0
        while True:
            sym = bits[pos:pos + 2]
            if len(sym) < 2:
                raise FramingError("table stream ends without terminator")
            pos += 2
            if sym == "11":
                break
            if sym == "10":
                raise FramingError("symbol 10 inside table stream")
            raw.append(1 if sym == "01" else 0)
        ab = bits[pos:]
        if len(ab) != 2:
            raise FramingError(f"expected 2 vector bits after terminator, got {len(ab)}")

    if ab == "00":
        hd = _rebuild(NO_STABLE, raw)
    elif ab == "01":
        hd = _rebuild(Vect(0, 0), raw)
    else:
        try:
            first = raw.index(1) + 1
        except ValueError:
            raise FramingError("vector bits announce a value but the table has no 1") from None
        raw[first - 1] = 0
        hd = _rebuild(Vect(first, first + (1 if ab == "11" else 0)), raw)
    validate_descriptor(hd, minimal=True)
    return hd, dyn


def _rebuild(vect: Vect, raw: list[int]) -> HDescriptor:
    last = 0
    for i in range(len(raw), 0, -1):
        if raw[i - 1]:
            last = i
            break
    length = max(vect.pn if vect.pn >= 0 else 0, last)
    return HDescriptor(vect, tuple(raw[:length] + [0] * (length - len(raw))))


def notification(scheme: Scheme) -> WireMessage:
    """Change-root notification: the dynamic flag bit set, placeholder payload."""
    if isinstance(scheme, KnownSize):
        body = "0" * (scheme.cells + 2)
    else:
        body = "1100"
    return WireMessage("1" + body, scheme, REROOT_FLAG)
