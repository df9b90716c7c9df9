"""
Conversion between service objects and wire documents.

- cartan_from_document / cartan_document: Cartan files in and out
- seed_document / seed_from_document: seed JSON with exact [p, q] exchange matrix entries
- presentation_document, membership_report: report payloads
"""

from fractions import Fraction
from typing import Optional

from clusterlab.models.documents import (
    CartanDocument,
    MembershipReport,
    MinorLabelDocument,
    PresentationDocument,
    SeedDocument,
    VertexDocument,
    WitnessDocument,
)
from clusterlab.services.cartan import GeneralizedCartanMatrix, validate_cartan
from clusterlab.services.cluster_engine import MembershipResult
from clusterlab.services.dbc_seed import DBCSeed, FramedSeed, MinorLabel, Seed
from clusterlab.services.errors import InputError
from clusterlab.services.exact_poly import LaurentPoly
from clusterlab.services.monoid_lab import MonoidPresentation


def cartan_from_document(doc: CartanDocument) -> GeneralizedCartanMatrix:
    return validate_cartan(doc.matrix, doc.labels)


def cartan_document(cartan: GeneralizedCartanMatrix, name: str = "") -> CartanDocument:
    return CartanDocument(
        labels=list(cartan.labels),
        matrix=[list(row) for row in cartan.entries],
        symmetrizers=list(cartan.symmetrizers),
        name=name or None,
    )


def minor_text(label: MinorLabel) -> str:
    if label.shift_kind == "alpha":
        return f"e^α{label.torus_shift.coords}"
    text = f"Δ[u={list(label.u_part.word)}, v={list(label.v_part.word)}, ω{label.level}]"
    if label.torus_shift is not None:
        return f"{text}·e^ω{label.level}"
    return text


def label_document(label: MinorLabel) -> MinorLabelDocument:
    return MinorLabelDocument(
        u_word=list(label.u_part.word),
        v_word=list(label.v_part.word),
        level=label.level,
        torus_shift=list(label.torus_shift.coords) if label.torus_shift is not None else None,
    )


def seed_document(built: DBCSeed) -> SeedDocument:
    seed = built.seed
    vertices = [
        VertexDocument(
            id=v,
            level=seed.levels[v],
            frozen=v not in seed.mutable,
            label=label_document(built.labels[v]),
            name=seed.names[v],
            symmetrizer=seed.symmetrizers[v],
        )
        for v in seed.vertices
    ]
    epsilon = [[(x.numerator, x.denominator) for x in row] for row in seed.epsilon]
    sigma = [seed.names[v] for v in built.sigma] if isinstance(built, FramedSeed) else None
    return SeedDocument(
        cartan=cartan_document(built.datum.cartan, built.datum.name),
        word=list(built.word.letters),
        vertices=vertices,
        epsilon=epsilon,
        sigma=sigma,
    )


def seed_from_document(doc: SeedDocument) -> Seed:
    """Rebuild the seed (matrix, mutable set, symmetrizers, levels, names) from its document."""
    if len(doc.epsilon) != len(doc.vertices) or any(len(row) != len(doc.vertices) for row in doc.epsilon):
        raise InputError("Seed document epsilon must be square in the number of vertices")
    try:
        epsilon = [[Fraction(p, q) for p, q in row] for row in doc.epsilon]
    except ZeroDivisionError as exc:
        raise InputError("Seed document epsilon has a zero denominator") from exc
    return Seed(
        vertices=[v.id for v in doc.vertices],
        mutable=[v.id for v in doc.vertices if not v.frozen],
        epsilon=epsilon,
        symmetrizers={v.id: v.symmetrizer for v in doc.vertices},
        levels={v.id: v.level for v in doc.vertices},
        names={v.id: v.name for v in doc.vertices},
    )


def presentation_document(
    presentation: MonoidPresentation, cartan: Optional[list[list[int]]] = None
) -> PresentationDocument:
    data = presentation.to_dict()
    return PresentationDocument(
        **data,
        verified=presentation.verify() if presentation.has_reference else None,
        cartan=cartan,
    )


def membership_report(result: MembershipResult, f: Optional[LaurentPoly], text: str, built: DBCSeed, sigma: list[int]) -> MembershipReport:
    names = built.seed.names
    return MembershipReport(
        expression=f.to_text() if f is not None else text,
        verdict=result.verdict.value,
        depth=result.depth,
        seeds_checked=result.seeds_checked,
        sigma=[names[v] for v in sigma],
        witnesses=[
            WitnessDocument(
                seed_path=w.seed_path,
                offending_vertex=names[w.offending_vertex] if w.offending_vertex is not None else None,
                exponent=w.exponent,
            )
            for w in result.witnesses
        ],
    )
