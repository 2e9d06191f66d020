from fractions import Fraction

import pytest

from hyperext.arrangement import Arrangement
from hyperext.exactq import Hyperplane
from hyperext.extension import extend
from hyperext.render import HIGHLIGHT, clip, default_window, parse_window, render_svg


def test_example_drawing(example) -> None:
    svg = render_svg(example)
    assert svg.startswith("<?xml")
    assert svg.count("<line") == 3
    assert svg.count("<circle") == 2
    assert svg.count(HIGHLIGHT) == 1
    assert render_svg(example) == svg


def test_new_line_is_highlighted(example) -> None:
    svg = render_svg(extend(example, (0, 1), 1), parse_window("-2,-2,3,3"))
    assert svg.count("<line") == 4
    assert svg.count("<circle") == 4
    lines = [row for row in svg.splitlines() if row.startswith("<line")]
    assert HIGHLIGHT in lines[-1]


def test_empty_canvas() -> None:
    svg = render_svg(Arrangement.empty(2))
    assert "<rect" in svg
    assert "<line" not in svg
    assert default_window(Arrangement.empty(2)) == (-1, -1, 1, 1)


def test_default_window(example) -> None:
    assert default_window(example) == (-1, -1, 2, 1)


def test_clip() -> None:
    window = parse_window("-1,-1,1,1")
    assert clip(Hyperplane.of((1, 0), 5), window) is None
    assert clip(Hyperplane.of((1, -1), 0), window) == ((-1, -1), (1, 1))
    assert clip(Hyperplane.of((0, 2), 1), window) == ((-1, Fraction(1, 2)), (1, Fraction(1, 2)))


def test_refusals(boolean3, example_mod5) -> None:
    with pytest.raises(ValueError):
        render_svg(boolean3)
    with pytest.raises(ValueError):
        render_svg(example_mod5)
    with pytest.raises(ValueError):
        parse_window("0,0,1")
    with pytest.raises(ValueError):
        parse_window("1,0,0,1")
