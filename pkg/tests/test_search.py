import pytest

from semicont.conditions import ORDER, Condition, check_at, check_global
from semicont.graph import load_graph
from semicont.search import all_models, parse_grid, sweep

C = Condition
GRAPH = load_graph()


@pytest.fixture(scope="module")
def sweep3():
    return sweep(3)


def model_by_id(n_max, mid, grid=("-inf", "-1", "0", "1", "+inf")):
    return dict(all_models(n_max, grid))[mid]


def test_one_point_spaces_separate_nothing():
    rep = sweep(1)
    assert rep.clean
    assert rep.models == 5
    assert not rep.pointwise_sep and not rep.global_sep
    for _, m in all_models(1, ("-inf", "-1", "0", "1", "+inf")):
        assert all(check_global(c, m).holds for c in ORDER)


def test_lsc_implies_twlc_on_small_grid():
    rep = sweep(2, ("0", "1"))
    assert rep.clean
    assert rep.separated(C.LSC, C.TWLC) is None
    assert rep.separated(C.LSC, C.TWLC, "global") is None


def test_no_lsc_lsca_separation(sweep3):
    assert sweep3.separated(C.LSC, C.LSCA) is None
    assert sweep3.separated(C.LSCA, C.LSC) is None


def test_qrgi_without_rgi_witness(sweep3):
    w = sweep3.separated(C.QRGI, C.RGI)
    assert w is not None
    m = model_by_id(3, w.model)
    assert check_at(C.QRGI, m, w.point).holds
    assert not check_at(C.RGI, m, w.point).holds


def test_witnesses_replay_and_never_contradict_the_graph(sweep3):
    assert sweep3.clean
    models = dict(all_models(3, ("-inf", "-1", "0", "1", "+inf")))
    for (a, b), w in sweep3.pointwise_sep.items():
        assert b not in GRAPH.closure([a], ["N1"], "pointwise")
        m = models[w.model]
        assert check_at(a, m, w.point).holds and not check_at(b, m, w.point).holds
    for (a, b), w in sweep3.global_sep.items():
        assert b not in GRAPH.closure([a], ["N1"], "global")
        m = models[w.model]
        assert check_global(a, m).holds and not check_global(b, m).holds


def test_report_text_is_deterministic(sweep3):
    again = sweep(3)
    assert again.to_text(GRAPH) == sweep3.to_text(GRAPH)
    text = sweep3.to_text(GRAPH)
    assert "LSC->TWLC\tyes\tnone" in text
    assert "edge violations\t0" in text


def test_workers_do_not_change_results():
    one = sweep(3, ("0", "1", "+inf"), workers=1)
    two = sweep(3, ("0", "1", "+inf"), workers=2)
    assert one.to_text(GRAPH) == two.to_text(GRAPH)


def test_planted_edge_is_violated():
    from semicont._data import data_text

    text = data_text("edges.txt") + "TWLC | LSC | | both | planted\n"
    rep = sweep(2, ("0", "1"), graph_text=text)
    assert rep.violations
    assert all("TWLC -> LSC" in v.edge for v in rep.violations)


def test_bad_arguments():
    with pytest.raises(ValueError):
        sweep(5)
    with pytest.raises(ValueError):
        parse_grid(["zero"])
