import pytest

from multival.fixtures import four_node_network
from multival.network import rationalize
from multival.plotting import mathtext_label, reduction_figure, save_reduction_figure


@pytest.mark.parametrize("label, expected", [
    ("A", "A"),
    ("(I⊕C\u0304)∘A", r"$(I\oplus \overline{C})\circ A$"),
    ("(I⊕[A+C]\u0304)∘B", r"$(I\oplus \overline{A{+}C})\circ B$"),
])
def test_mathtext_label(label, expected):
    assert mathtext_label(label) == expected


def test_reduction_figure_has_three_panels():
    net = four_node_network("both")
    reduced, report = rationalize(net)
    fig = reduction_figure(net, reduced, report)
    assert len(fig.axes) == 3


def test_save_reduction_figure(tmp_path):
    net = four_node_network("only_c")
    reduced, report = rationalize(net)
    path = tmp_path / "reduction.png"
    save_reduction_figure(net, reduced, report, path)
    assert path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
