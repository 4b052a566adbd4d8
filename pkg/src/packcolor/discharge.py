"""Discharging over a plane embedding with exact rational charges.

Initial charge is d(x) - 4 for every vertex and face.  Two rules move
charge out of 5+-faces:

    R1  each 3-vertex receives 1/2 from each incident 5+-face
    R2  each 3-face receives 1/2 from each adjacent 5+-face, per shared edge

Incidences are counted along face walks, so a face that meets a vertex
twice pays twice.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .graph import GraphError, PlaneEmbedding
from .predicates import PredicateResult, THEOREM_PREDICATES, structural_predicates

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Transfer:
    source: int  # face index
    sink_kind: str  # "vertex" or "face"
    sink: int
    amount: Fraction
    rule: str


@dataclass
class ChargeLedger:
    vertex_initial: list[Fraction]
    face_initial: list[Fraction]
    face_sizes: list[int]
    vertex_final: list[Fraction] = field(default_factory=list)
    face_final: list[Fraction] = field(default_factory=list)
    transfers: list[Transfer] = field(default_factory=list)

    def total_initial(self) -> Fraction:
        return sum(self.vertex_initial, Fraction(0)) + sum(self.face_initial, Fraction(0))

    def total_final(self) -> Fraction:
        return sum(self.vertex_final, Fraction(0)) + sum(self.face_final, Fraction(0))

    def negative(self) -> list[tuple[str, int, Fraction]]:
        out = [("vertex", v, c) for v, c in enumerate(self.vertex_final) if c < 0]
        return out + [("face", f, c) for f, c in enumerate(self.face_final) if c < 0]

    def table(self, sep: str = "\t") -> str:
        rows = [sep.join(("element", "id", "size", "initial", "final"))]
        for v, (a, b) in enumerate(zip(self.vertex_initial, self.vertex_final)):
            rows.append(sep.join(("vertex", str(v), str(int(a) + 4), str(a), str(b))))
        for f, (a, b) in enumerate(zip(self.face_initial, self.face_final)):
            rows.append(sep.join(("face", str(f), str(self.face_sizes[f]), str(a), str(b))))
        return "\n".join(rows) + "\n"

    def transfer_log(self, sep: str = "\t") -> str:
        rows = [sep.join(("rule", "from-face", "to", "amount"))]
        for t in self.transfers:
            rows.append(sep.join((t.rule, str(t.source), f"{t.sink_kind} {t.sink}", str(t.amount))))
        return "\n".join(rows) + "\n"


def initial_charges(e: PlaneEmbedding) -> ChargeLedger:
    g = e.graph
    if not g.is_connected():
        raise GraphError("discharging needs a connected plane graph")
    faces = e.faces()
    vc = [Fraction(g.degree(v) - 4) for v in range(g.n)]
    fc = [Fraction(f.size - 4) for f in faces]
    return ChargeLedger(vc, fc, [f.size for f in faces], list(vc), list(fc))


def apply_rules(e: PlaneEmbedding) -> ChargeLedger:
    led = initial_charges(e)
    g, faces = e.graph, e.faces()
    face_of = {d: i for i, f in enumerate(faces) for d in f.darts}
    for i, f in enumerate(faces):
        if f.size < 5:
            continue
        for v in f.walk:
            if g.degree(v) == 3:
                led.transfers.append(Transfer(i, "vertex", v, HALF, "R1"))
        for a, b in f.darts:
            j = face_of[(b, a)]
            if j != i and faces[j].size == 3:
                led.transfers.append(Transfer(i, "face", j, HALF, "R2"))
    for t in led.transfers:
        led.face_final[t.source] -= t.amount
        if t.sink_kind == "vertex":
            led.vertex_final[t.sink] += t.amount
        else:
            led.face_final[t.sink] += t.amount
    return led


@dataclass(frozen=True)
class FaceCount:
    face: int
    size: int
    a: int  # 3-vertices on the face
    b: int  # 3-face adjacencies, per shared edge
    ok: bool
    failed: tuple[str, ...] = ()


def face_counts(e: PlaneEmbedding, theorem: int) -> list[FaceCount]:
    """Counts (a, b) on every large face and the inequality checks.

    Large means size >= 7 for theorem 1 and >= 6 for theorem 2.
    """
    g, faces = e.graph, e.faces()
    face_of = {d: i for i, f in enumerate(faces) for d in f.darts}
    low = 7 if theorem == 1 else 6
    out = []
    for i, f in enumerate(faces):
        if f.size < low:
            continue
        a = sum(1 for v in f.walk if g.degree(v) == 3)
        b = sum(1 for x, y in f.darts if face_of[(y, x)] != i and faces[face_of[(y, x)]].size == 3)
        L = f.size
        if theorem == 1:
            checks = {"2a<=l": 2 * a <= L, "3b/2<=l": Fraction(3, 2) * b <= L, "2a+b<=l": 2 * a + b <= L}
        else:
            checks = {"2a+b<=l": 2 * a + b <= L, "2b+a<=l": 2 * b + a <= L}
        failed = tuple(k for k, v in checks.items() if not v)
        out.append(FaceCount(i, L, a, b, not failed, failed))
    return out


@dataclass
class AuditReport:
    theorem: int
    predicates: list[PredicateResult]
    ledger: ChargeLedger
    faces: list[FaceCount]

    @property
    def predicate_clean(self) -> bool:
        return all(p.holds for p in self.predicates)

    @property
    def violated(self) -> list[PredicateResult]:
        return [p for p in self.predicates if not p.holds]

    @property
    def all_nonnegative(self) -> bool:
        return not self.ledger.negative()

    @property
    def contradiction(self) -> bool:
        """Predicate-clean with nonnegative final charges yet total -8."""
        return self.predicate_clean and self.all_nonnegative and self.ledger.total_final() == -8

    def inequality_failures(self) -> list[FaceCount]:
        return [f for f in self.faces if not f.ok]

    def format(self, tsv: bool = False) -> str:
        sep = "\t" if tsv else " "
        lines = [f"theorem{sep}{self.theorem}",
                 f"total-initial{sep}{self.ledger.total_initial()}",
                 f"total-final{sep}{self.ledger.total_final()}"]
        for p in self.predicates:
            w = "" if p.holds else f"{sep}{p.witness}"
            lines.append(f"predicate{sep}{p.key}{sep}{'holds' if p.holds else 'violated'}{w}")
        for f in self.faces:
            lines.append(f"large-face{sep}{f.face}{sep}size={f.size}{sep}a={f.a}{sep}b={f.b}{sep}"
                         f"{'ok' if f.ok else 'fails ' + ','.join(f.failed)}")
        if self.predicate_clean:
            verdict = "contradiction" if self.contradiction else "predicate-clean with negative final charge"
        else:
            verdict = "reducible configuration present: " + self.violated[0].key
        lines.append(f"verdict{sep}{verdict}")
        body = "\n".join(lines) + "\n"
        return body + self.ledger.table(sep="\t" if tsv else " ") + self.ledger.transfer_log(sep="\t" if tsv else " ")


def audit(e: PlaneEmbedding, theorem: int = 1) -> AuditReport:
    if theorem not in THEOREM_PREDICATES:
        raise ValueError(f"theorem must be 1 or 2, got {theorem}")
    if e.graph.max_degree() > 4:
        raise GraphError(f"maximum degree {e.graph.max_degree()} exceeds 4")
    preds = structural_predicates(e.graph, e, theorem=theorem)
    return AuditReport(theorem, preds, apply_rules(e), face_counts(e, theorem))
