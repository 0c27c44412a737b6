"""Gauss diagrams, planar (PD) diagrams and conversions between them."""

from .convert import gauss_faces, gauss_quads, is_realizable, pd_to_gauss, realize
from .gauss import (
    GaussDiagram,
    canonical_form,
    canonical_key,
    connected_sum,
    parse_gauss,
    render_gauss,
)
from .gauss import mirror as _mirror_gauss
from .gauss import writhe
from .planar import PlanarDiagram, parse_pd, render_pd


def mirror(d):
    """Reverse every crossing: over/under swapped (arrow reversed, sign negated)."""
    if isinstance(d, GaussDiagram):
        return _mirror_gauss(d)
    out = d
    for c in range(d.n_crossings):
        out = out.switch(c)
    return out


__all__ = [
    "GaussDiagram",
    "PlanarDiagram",
    "canonical_form",
    "canonical_key",
    "connected_sum",
    "gauss_faces",
    "gauss_quads",
    "is_realizable",
    "mirror",
    "parse_gauss",
    "parse_pd",
    "pd_to_gauss",
    "realize",
    "render_gauss",
    "render_pd",
    "writhe",
]
