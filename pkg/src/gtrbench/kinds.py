"""Shared enumerations: question task kinds and the fixed GTR pool."""

from __future__ import annotations

from enum import Enum


class TaskKind(str, Enum):
    CONN = "Conn"
    CYC = "Cyc"
    TS = "TS"
    SP = "SP"
    MF = "MF"
    BGM = "BGM"
    HP = "HP"
    LP = "LP"
    NC = "NC"


#: Tasks for which synthetic generation is supported. LP and NC are recognized
#: end to end (instructions, features, judging) but are built only from
#: ingested real graphs plus label data.
GENERATED_TASKS: tuple[TaskKind, ...] = (
    TaskKind.CONN,
    TaskKind.CYC,
    TaskKind.TS,
    TaskKind.SP,
    TaskKind.MF,
    TaskKind.BGM,
    TaskKind.HP,
)


class GtrId(str, Enum):
    """The eight graph topology representations: five rendered layouts and
    three textual serializations."""

    VDOT = "Vdot"
    VNEATO = "Vneato"
    VCIRCO = "Vcirco"
    VFDP = "Vfdp"
    VSFDP = "Vsfdp"
    TSET = "Tset"
    TLIST = "Tlist"
    TMAT = "Tmat"


#: Canonical pool order; every ranking and tie-break uses this sequence.
POOL_ORDER: tuple[GtrId, ...] = (
    GtrId.VDOT,
    GtrId.VNEATO,
    GtrId.VCIRCO,
    GtrId.VFDP,
    GtrId.VSFDP,
    GtrId.TSET,
    GtrId.TLIST,
    GtrId.TMAT,
)

VISUAL_GTRS: tuple[GtrId, ...] = POOL_ORDER[:5]
TEXTUAL_GTRS: tuple[GtrId, ...] = POOL_ORDER[5:]


def pool_index(gtr: GtrId) -> int:
    return POOL_ORDER.index(gtr)
