"""Request and response models for the table service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

Kind = Literal["Q", "Ftilde", "Dtilde", "Htilde", "S", "P"]


class PolicySpec(BaseModel):
    """A word policy by name, or a custom one as an explicit word list."""

    name: str = "lexmin"
    words: Optional[list[list[int]]] = None


class HealthResponse(BaseModel):
    status: str
    version: str


class TableRequest(BaseModel):
    cartan: str
    kinds: Optional[list[Kind]] = None
    policy: PolicySpec = Field(default_factory=PolicySpec)
    refresh: bool = False
    jobs: int = Field(1, ge=1, le=16)


class TableEntry(BaseModel):
    w: list[int]
    v: list[int]
    kind: Kind
    var: Literal["q", "t"]
    coeffs: dict[str, int]


class TableResponse(BaseModel):
    cartan: str
    policy: str
    version: str
    entries: list[TableEntry]


class VerifyRequest(BaseModel):
    cartan: str
    checks: list[str] = Field(default_factory=lambda: ["all"])
    policy: PolicySpec = Field(default_factory=PolicySpec)
    jobs: int = Field(1, ge=1, le=16)


class CheckOutcome(BaseModel):
    name: str
    passed: bool
    detail: str
    counterexample: Optional[str] = None


class VerifyResponse(BaseModel):
    cartan: str
    passed: bool
    checks: list[CheckOutcome]


class BasisRequest(BaseModel):
    cartan: str
    element: list[int]
    basis: Literal["B", "C"] = "B"
    express_in: Literal["C", "T"] = "C"
    policy: PolicySpec = Field(default_factory=PolicySpec)


class BasisTerm(BaseModel):
    word: list[int]
    var: Literal["q", "t"]
    coeffs: dict[str, int]


class BasisResponse(BaseModel):
    cartan: str
    rendered: str
    terms: list[BasisTerm]


class BenchRequest(BaseModel):
    cartan: str
    max_length: Optional[int] = Field(None, ge=0)
    engines: list[Literal["brute", "dp"]] = Field(default_factory=lambda: ["brute", "dp"])


class BenchRow(BaseModel):
    length: int
    engine: str
    words: int
    seconds: Optional[float] = None
    states: Optional[int] = None
    note: Optional[str] = None


class BenchResponse(BaseModel):
    cartan: str
    rows: list[BenchRow]
