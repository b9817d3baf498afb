import pytest

from linpbt import harness
from linpbt.errors import MutantError
from linpbt.fpc import Height, Pair, Size
from linpbt.pbt import Exhaustive, replay

SMALL = Exhaustive(harness.parse_schedule("pair(size:4,height:4)"))


@pytest.fixture(scope="module")
def small_matrix():
    return harness.run_matrix(props=["dtx", "srv"], mutant_ids=["M2", "M4"], strategy=SMALL)


def test_small_matrix(small_matrix):
    rep = small_matrix
    assert rep.rows == ["orig", "M2", "M4"]
    assert rep.kills() == {"orig": [], "M2": ["dtx"], "M4": ["srv"]}
    assert rep.cell("M2", "dtx").cex == "w := 0 - 1"


def test_killed_cells_replay(small_matrix):
    from linpbt import corpus

    for (row, col), report in small_matrix.reports.items():
        progs = corpus.programs_for("imp_linear")
        progs["linear"] = corpus.apply_mutant(progs["linear"], row)
        prop = corpus.properties("imp_linear", progs, [col])[0]
        assert replay(report, prop)


def test_csv_round_trip(small_matrix):
    text = small_matrix.to_csv()
    back = harness.MatrixReport.from_csv(text)
    assert back.rows == small_matrix.rows and back.columns == small_matrix.columns
    assert back.cells == small_matrix.cells
    assert back.to_csv() == text


def test_csv_without_timing(small_matrix):
    text = small_matrix.to_csv(timing=False)
    assert "time" not in text.splitlines()[0]
    back = harness.MatrixReport.from_csv(text)
    assert [c.status for c in back.cells.values()] == [c.status for c in small_matrix.cells.values()]


def test_renderings(small_matrix):
    table = small_matrix.render("table")
    assert "found" in table and "w := 0 - 1" in table
    assert small_matrix.render("json").startswith("{")


def test_empty_matrix():
    rep = harness.run_matrix(props=[])
    assert rep.cells == {} and rep.columns == []
    assert rep.render("csv").count("\n") == 1


def test_unknown_mutant():
    with pytest.raises(MutantError):
        harness.run_matrix(props=["dtx"], mutant_ids=["M99"])


def test_mbt_columns_follow_judgment():
    from linpbt import corpus

    ms = corpus.mutants()
    assert harness.mbt_columns(ms["M1"]) == ("exec_cl", "exec_lc")
    assert harness.mbt_columns(ms["M8"]) == ("type_cl", "type_lc")


def test_bench_single_size():
    rows = harness.bench("eq", sizes=[3], runs=1)
    assert [(r.engine, r.size) for r in rows] == [("linear", 3), ("vanilla", 3)]
    assert rows[0].generated == rows[1].generated > 0
    assert rows[0].budget == harness.BENCH_C * 27
    assert 0 < rows[0].coverage <= 1
    table = harness.bench_table(rows)
    assert len(table.splitlines()) == 3
    assert harness.bench_table(rows, "csv").startswith("engine,size,mean")


def test_parse_schedule():
    assert harness.parse_schedule("size:1..3") == [Size(1), Size(2), Size(3)]
    assert harness.parse_schedule("height:2;pair(size:1,height:2)") == [
        Height(2), Pair(Size(1), Height(2))]
