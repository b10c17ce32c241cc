#!/usr/bin/env python3
"""
Tests for the flat surface model, its exports, finite approximants, the pseudo-Anosov
report and the renormalization map.
"""

import math
from fractions import Fraction

import networkx as nx
import pytest

from src.bundles.catalog import chacon, fibonacci, odometer_tower
from src.bundles.random_diagrams import random_valid_diagram
from src.core.errors import NeedsDepth
from src.surface.approximant import finite_approximant, gluing_graphs
from src.surface.export import export_json, export_svg, import_json, render_png, write_surface_files
from src.surface.model import TOP, build_surface, surface_deviation, teichmuller_deform
from src.surface.pseudo_anosov import stationary_pA_report
from src.surface.renormalize import renorm_map

PHI = (1 + math.sqrt(5)) / 2


def test_odometer_surface_is_a_square_torus():
    surface = build_surface(odometer_tower(2), 0)
    assert len(surface.rectangles) == 1
    assert len(surface.identifications()) == 2, "one top/bottom and one right/left gluing"
    assert surface.area == 1
    assert all(pair.closing for pair in surface.identifications())


def test_fibonacci_surface_counts():
    surface = build_surface(fibonacci(), 4)
    assert len(surface.rectangles) == 2
    assert float(surface.area) == pytest.approx(1.0)
    kinds = [pair.kind for pair in surface.identifications()]
    assert kinds.count(TOP) == 13, "one top cell per path into level 4"
    assert len(kinds) == 26
    assert surface.top_map.length == pytest.approx(1.0)


def test_teichmuller_deform_preserves_area():
    surface = build_surface(chacon(), 3)
    deformed = teichmuller_deform(surface, factor=Fraction(3))
    assert deformed.area == surface.area == 1
    assert deformed.widths[0] == 3 * surface.widths[0]
    floated = teichmuller_deform(surface, t=math.log(2))
    assert floated.mode == "float"
    assert float(floated.area) == pytest.approx(1.0)
    assert teichmuller_deform(surface) is surface


def test_json_round_trip_and_files(tmp_path):
    surface = build_surface(chacon(), 3)
    again = import_json(export_json(surface))
    assert surface_deviation(surface, again) == 0
    assert again.area == surface.area
    paths = write_surface_files(surface, str(tmp_path), "chacon", png=True)
    assert set(paths) == {"json", "svg", "png"}
    assert (tmp_path / "chacon.svg").read_text().startswith("<?xml")


def test_svg_and_png_rendering():
    surface = build_surface(fibonacci(), 3)
    svg = export_svg(surface)
    assert "<svg" in svg and svg.rstrip().endswith("</svg>")
    assert svg.count("<rect") == 2
    img = render_png(surface)
    assert img.shape == (512, 512, 3)


def test_surface_deviation_detects_combinatorial_change():
    a = build_surface(fibonacci(), 3)
    b = build_surface(odometer_tower(2), 3)
    assert surface_deviation(a, a) == 0
    assert surface_deviation(a, b) == math.inf


def test_pseudo_anosov_reports():
    fib = fibonacci()
    report = stationary_pA_report(fib.diagram, fib.orders)
    assert report.is_stationary and report.period == 1
    assert float(report.expansion_factor) == pytest.approx(PHI)
    assert report.two_sided

    ch = chacon()
    report = stationary_pA_report(ch.diagram, ch.orders)
    assert float(report.expansion_factor) == pytest.approx(3.0)
    assert not report.two_sided, "the negative side of Chacon is the identity"


def test_odometer_approximant_is_a_torus():
    report = finite_approximant(odometer_tower(2), 0)
    assert report.euler_characteristic == 0
    assert report.genera == (1,)
    assert len(report.vertical) == 1 and len(report.horizontal) == 1
    with pytest.raises(ValueError):
        finite_approximant(odometer_tower(2), -1)


def test_square_torus_glues_all_corners_to_one_point():
    corners, faces = gluing_graphs(build_surface(odometer_tower(2), 0))
    assert corners.number_of_nodes() == 8, "two breakpoints on each of the four sides"
    assert nx.number_connected_components(corners) == 1
    assert nx.number_connected_components(faces) == 1


@pytest.mark.parametrize("k", [1, 2])
def test_renorm_map_matches_shift_on_fibonacci(k):
    bundle = fibonacci()
    surface = build_surface(bundle, 5)
    renormalized = renorm_map(surface, bundle, k)
    assert renormalized.depth == 5 - k
    assert float(renormalized.area) == pytest.approx(1.0)


def test_renorm_map_is_exact_on_chacon():
    bundle = chacon()
    renormalized = renorm_map(build_surface(bundle, 3), bundle, 1)
    assert renormalized.area == 1
    assert renorm_map(build_surface(bundle, 3), bundle, 0).depth == 3
    with pytest.raises(NeedsDepth):
        renorm_map(build_surface(bundle, 1), bundle, 2)


@pytest.mark.parametrize("seed", range(3))
def test_renorm_map_matches_shift_on_random_diagrams(seed):
    bundle = random_valid_diagram(seed, depth=4)
    renorm_map(build_surface(bundle, 3), bundle, 1)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
