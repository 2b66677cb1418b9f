"""JSON documents and SVG plots produced by the command line tool."""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from typing import Any, Iterable, Sequence

from .critical import CriticalStructure
from .poly import Polynomial
from .solver import RootResult, TrackedRoot

SCHEMA_VERSION = "1"

__all__ = [
    "SCHEMA_VERSION",
    "parse_complex",
    "parse_coefficients",
    "format_complex",
    "cjson",
    "result_document",
    "critical_document",
    "trace_document",
    "trace_svg",
]


class ParseError(ValueError):
    pass


def parse_complex(token: str) -> complex:
    """Parse ``re``, ``imi`` or ``re+imi`` / ``re-imi`` (no spaces)."""
    if not token or any(ch in token for ch in " \t()jJ"):
        raise ParseError(f"invalid coefficient {token!r}")
    try:
        value = complex(token.replace("i", "j"))
    except ValueError:
        raise ParseError(f"invalid coefficient {token!r}") from None
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ParseError(f"non-finite coefficient {token!r}")
    return value


def parse_coefficients(text: str) -> Polynomial:
    tokens = text.split(",")
    coeffs = [parse_complex(tok.strip()) for tok in tokens]
    if len(coeffs) < 2:
        raise ParseError("degree must be ≥ 1")
    if coeffs[-1] == 0:
        raise ParseError(f"leading coefficient {tokens[-1].strip()!r} must be nonzero")
    return Polynomial(coeffs)


def format_complex(z: complex) -> str:
    """Inverse of :func:`parse_complex`; exact thanks to float repr."""
    re, im = repr(float(z.real)), repr(float(z.imag))
    sign = "" if im.startswith("-") else "+"
    return f"{re}{sign}{im}i"


def cjson(z: complex) -> dict[str, float]:
    return {"re": float(z.real), "im": float(z.imag)}


def _sorted_complex(values: Iterable[complex]) -> list[complex]:
    return sorted(values, key=lambda z: (z.real, z.imag))


def result_document(P: Polynomial, result: RootResult) -> dict[str, Any]:
    roots = sorted(result.roots, key=lambda r: (r.value.real, r.value.imag))
    return {
        "schema_version": SCHEMA_VERSION,
        "degree": result.degree,
        "seed": result.seed,
        "coefficients": [cjson(a) for a in P.coeffs],
        "roots": [
            {
                "re": float(r.value.real),
                "im": float(r.value.imag),
                "multiplicity": r.multiplicity,
                "residual": float(r.residual),
                "provenance": r.provenance.value,
            }
            for r in roots
        ],
        "diagnostics": {
            "retries": result.retries,
            "total_tracker_steps": result.tracker_steps,
            "critical_values": [cjson(d) for d in _sorted_complex(result.critical_values)],
        },
    }


def critical_document(P: Polynomial, cs: CriticalStructure) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "degree": P.degree,
        "points": [cjson(z) for z in _sorted_complex(cs.points)],
        "values": [cjson(d) for d in _sorted_complex(cs.values)],
    }


def trace_document(P: Polynomial, seed: int, tracked: TrackedRoot | None, cs: CriticalStructure, root: complex) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "degree": P.degree,
        "seed": seed,
        "coefficients": [cjson(a) for a in P.coeffs],
        "critical_values": [cjson(d) for d in _sorted_complex(cs.values)],
        "root": cjson(root),
    }
    if tracked is None:
        doc.update(branch="critical", start=None, clearance=None, waypoints=[], records=[])
        return doc
    doc.update(
        branch="regular",
        start=cjson(tracked.start),
        clearance=tracked.plan.clearance,
        waypoints=[cjson(w) for w in tracked.plan.waypoints],
        records=[
            {"t": r.t, "c": cjson(r.c), "z": cjson(r.z), "h": r.h, "newton_iters": r.newton_iters}
            for r in tracked.trace.records
        ],
    )
    return doc


# --- SVG -------------------------------------------------------------------

_PANEL = 480
_GAP = 20
_SVG_NS = "http://www.w3.org/2000/svg"


def _view_box(points: Sequence[complex], pad: Sequence[float] = ()) -> tuple[float, float, float, float]:
    xs = [p.real for p in points]
    ys = [-p.imag for p in points]  # SVG y grows downwards
    if not xs:
        xs, ys = [0.0], [0.0]
    extra = max(pad, default=0.0)
    x0, x1 = min(xs) - extra, max(xs) + extra
    y0, y1 = min(ys) - extra, max(ys) + extra
    w, h = x1 - x0, y1 - y0
    span = max(w, h, 1e-12)
    w, h = max(w, span * 1e-3), max(h, span * 1e-3)
    mx, my = 0.1 * w, 0.1 * h
    return x0 - mx, y0 - my, w + 2 * mx, h + 2 * my


def _pts(points: Iterable[complex]) -> str:
    return " ".join(f"{p.real:.9g},{-p.imag:.9g}" for p in points)


def _line_style(el: ET.Element, color: str, width: float = 1.5) -> None:
    el.set("fill", "none")
    el.set("stroke", color)
    el.set("stroke-width", str(width))
    el.set("vector-effect", "non-scaling-stroke")


def _panel(parent: ET.Element, ident: str, title: str, x: float, vb: tuple[float, float, float, float]) -> ET.Element:
    g = ET.SubElement(parent, "g", id=ident)
    ET.SubElement(g, "title").text = title
    frame = ET.SubElement(g, "rect", x=str(x), y="0", width=str(_PANEL), height=str(_PANEL))
    _line_style(frame, "#999999", 1.0)
    label = ET.SubElement(g, "text", x=str(x + 8), y="18")
    label.set("font-family", "sans-serif")
    label.set("font-size", "14")
    label.text = title
    inner = ET.SubElement(
        g, "svg", x=str(x), y="0", width=str(_PANEL), height=str(_PANEL), viewBox=" ".join(f"{v:.9g}" for v in vb)
    )
    return inner


def trace_svg(tracked: TrackedRoot | None, cs: CriticalStructure, root: complex) -> str:
    """Two panels: the value plane (plan, critical values, clearance) and the root's trajectory."""
    svg = ET.Element(
        "svg",
        xmlns=_SVG_NS,
        version="1.1",
        width=str(2 * _PANEL + _GAP),
        height=str(_PANEL),
        viewBox=f"0 0 {2 * _PANEL + _GAP} {_PANEL}",
    )
    waypoints = list(tracked.plan.waypoints) if tracked else [0j]
    clearance = tracked.plan.clearance if tracked else 0.0
    c_box = _view_box(waypoints + list(cs.values), [clearance])
    c_panel = _panel(svg, "c-plane", "value plane c", 0, c_box)
    size = 0.02 * max(c_box[2], c_box[3])
    if tracked:
        line = ET.SubElement(c_panel, "polyline", points=_pts(waypoints))
        _line_style(line, "#1f77b4")
    for d in cs.values:
        circle = ET.SubElement(c_panel, "circle", cx=f"{d.real:.9g}", cy=f"{-d.imag:.9g}", r=f"{clearance:.9g}")
        _line_style(circle, "#bbbbbb", 1.0)
        x, y = d.real, -d.imag
        cross = ET.SubElement(
            c_panel,
            "path",
            d=f"M {x - size:.9g} {y - size:.9g} L {x + size:.9g} {y + size:.9g} "
            f"M {x - size:.9g} {y + size:.9g} L {x + size:.9g} {y - size:.9g}",
        )
        _line_style(cross, "#d62728")

    zs = [r.z for r in tracked.trace.records] if tracked else [root]
    z_box = _view_box(zs + [root])
    z_panel = _panel(svg, "z-plane", "root z(c)", _PANEL + _GAP, z_box)
    if tracked:
        line = ET.SubElement(z_panel, "polyline", points=_pts(zs))
        _line_style(line, "#2ca02c")
    mark = ET.SubElement(
        z_panel, "circle", cx=f"{root.real:.9g}", cy=f"{-root.imag:.9g}", r=f"{0.015 * max(z_box[2], z_box[3]):.9g}"
    )
    mark.set("fill", "#000000")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"
