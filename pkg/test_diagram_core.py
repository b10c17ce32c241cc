#!/usr/bin/env python3
"""
Tests for transition matrices, matrix sources and bi-infinite diagrams.
"""

import pytest

from src.core.errors import DimensionMismatch, ValidationFailure
from src.diagram.bidiagram import BiInfiniteDiagram, diagram_from_document
from src.diagram.matrix import TransitionMatrix, mpn_matrix
from src.diagram.sources import (
    TAIL_FAIL, TAIL_REPEAT, EventuallyPeriodicSource, ExplicitWindowSource, ProgrammaticSource,
    StationarySource, jump_index, single_vertex_level_size, source_from_dict,
)

FIB = TransitionMatrix.of([[1, 1], [1, 0]])


def fibonacci_diagram() -> BiInfiniteDiagram:
    return BiInfiniteDiagram(StationarySource((FIB,)), StationarySource((FIB,)), 2)


def test_matrix_product_and_transpose():
    a = TransitionMatrix.of([[1, 2], [0, 1]])
    b = TransitionMatrix.of([[1, 0], [3, 1]])
    assert (a @ b).to_list() == [[7, 2], [3, 1]], f"unexpected product {(a @ b).to_list()}"
    assert a.transpose().to_list() == [[1, 0], [2, 1]]
    assert a.apply((1, 1)) == (3, 1)
    with pytest.raises(ValueError):
        TransitionMatrix.of([[1, 1, 1]]) @ TransitionMatrix.of([[1, 1]])


def test_mpn_matrix_shape():
    m = mpn_matrix(3, 5)
    assert m.to_list() == [[3, 5], [0, 1]]
    assert not m.is_positive()


def test_path_counts_fibonacci():
    side = fibonacci_diagram().positive_side
    assert side.path_counts(0) == (1, 1)
    assert side.path_counts(1) == (2, 1), f"stack heights at level 1 should be (2, 1), got {side.path_counts(1)}"
    assert side.path_counts(3) == (5, 3)
    assert side.product(0, 2).to_list() == [[2, 1], [1, 1]]


def test_matrix_at_negative_levels_are_transposed():
    d = BiInfiniteDiagram(StationarySource((FIB,)), StationarySource(([[1, 2], [0, 1]],)), 2)
    assert d.matrix_at(-1).to_list() == [[1, 0], [2, 1]]
    assert d.level_size(0) == 2
    with pytest.raises(ValueError):
        d.matrix_at(0)


def test_shift_moves_positive_levels_to_the_negative_side():
    positive = ExplicitWindowSource(([[1, 1], [1, 0]], [[2, 1], [1, 1]], [[1, 0], [1, 1]]), TAIL_REPEAT)
    d = BiInfiniteDiagram(positive, StationarySource((FIB,)), 2)
    s = d.shift(2)
    assert s.matrix_at(1) == d.matrix_at(3)
    assert s.matrix_at(-1) == d.matrix_at(2), "level 2 should become level -1"
    assert s.matrix_at(-2) == d.matrix_at(1)
    assert s.matrix_at(-3) == d.matrix_at(-1)
    assert s.shift(1).window(3) == d.shift(3).window(3), "shifts should compose"
    assert d.shift(0) is d
    with pytest.raises(ValueError):
        d.shift(-1)


def test_validate_reports_offenders():
    good = fibonacci_diagram().validate(4)
    assert good.valid, f"Fibonacci should validate, got {good.kinds()}"
    assert good.level_sizes[-4] == 2

    zero_row = BiInfiniteDiagram(ExplicitWindowSource(([[1, 1], [0, 0]],)), StationarySource((FIB,)), 2)
    assert "zero-row" in zero_row.validate(2).kinds()

    weld = BiInfiniteDiagram(StationarySource(([[1, 1, 1]],)), StationarySource((FIB,)), 2)
    assert weld.validate(2).kinds()[0] == "weld-mismatch"

    tail = BiInfiniteDiagram(ExplicitWindowSource(([[1]],), TAIL_FAIL), StationarySource(([[2]],)), 1)
    report = tail.validate(3)
    assert "tail-policy" in report.kinds()
    assert report.to_dict()["valid"] is False


def test_weld_size_must_be_positive():
    with pytest.raises(ValidationFailure):
        BiInfiniteDiagram(StationarySource((FIB,)), StationarySource((FIB,)), 0)


def test_telescope_blocks():
    t = fibonacci_diagram().telescope(every=2)
    assert t.matrix_at(1).to_list() == [[2, 1], [1, 1]]
    assert t.matrix_at(-1) == fibonacci_diagram().matrix_at(-1), "the negative side is untouched"
    single = fibonacci_diagram().telescope(cut_levels=[1, 2])
    assert single.matrix_at(2) == FIB, "a one-level block is the level matrix itself"
    assert single.positive.period_info() == (2, 1)
    chacon = BiInfiniteDiagram(StationarySource((mpn_matrix(3, 1),)), StationarySource((FIB,)), 2)
    assert chacon.telescope(every=2).matrix_at(3).to_list() == [[9, 4], [0, 1]]
    with pytest.raises(ValidationFailure):
        fibonacci_diagram().telescope(cut_levels=[2, 2])


def test_incompatible_product_is_a_dimension_mismatch():
    with pytest.raises(DimensionMismatch) as info:
        TransitionMatrix.of([[1, 1, 1]]) @ TransitionMatrix.of([[1, 1]])
    assert info.value.exit_code == 2


def test_eventually_periodic_source():
    src = EventuallyPeriodicSource(([[2]],), ([[3]], [[5]]))
    assert [src.matrix(k)[0, 0] for k in range(1, 6)] == [2, 3, 5, 3, 5]
    assert src.period_info() == (1, 2)
    assert not src.is_stationary()


def test_programmatic_mpn_rule():
    src = ProgrammaticSource("mpn-family", {"p": 3, "nRule": "p^((i+1)^2-1)"})
    assert jump_index(3) == 1 and jump_index(8) == 2 and jump_index(4) is None
    assert src.matrix(3).to_list() == [[3, 27], [0, 1]], "n_1 = 3^3 at level 3"
    assert src.matrix(4).to_list() == [[3, 1], [0, 1]]
    with pytest.raises(ValidationFailure):
        ProgrammaticSource("no-such-rule", {})


def test_single_vertex_level_sizes():
    sizes = [single_vertex_level_size(k) for k in range(9)]
    assert sizes == [1, 1, 1, 1, 1, 2, 2, 1, 1], f"unexpected level sizes {sizes}"


def test_document_round_trip():
    d = BiInfiniteDiagram(ProgrammaticSource("mpn-family", {"p": 2, "n": [1, 4]}),
                          ExplicitWindowSource(([[1], [1]],), TAIL_FAIL), 1)
    again = diagram_from_document({"diagram": d.to_dict()})
    assert again == d, "from_dict(to_dict()) should restore the diagram"
    with pytest.raises(ValidationFailure):
        source_from_dict({"kind": "martian"})
    with pytest.raises(ValidationFailure):
        BiInfiniteDiagram.from_dict({"positive": {"kind": "stationary", "period": [[[1]]]}})


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
