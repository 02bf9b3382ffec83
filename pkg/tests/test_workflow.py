import pytest

from chordgraph.database import ReportStore
from chordgraph.workflow import PipelineWorkflow


@pytest.fixture
def workflow(db_url):
    return PipelineWorkflow(ReportStore(db_url))


@pytest.mark.parametrize("kind,n", [("convex", 12), ("onesided", 10), ("lattice", 16)])
def test_pipeline_passes(workflow, kind, n):
    result = workflow.run_pipeline(kind, n, seed=1)
    state = result["state"]
    assert result["success"], state.get("summary")
    assert state["report"].passed
    assert state["report"].pairs_tested == state["graph"].n * (state["graph"].n - 1) // 2
    assert "passed" in state["summary"]
    assert result["execution_time"] >= 0


def test_convex_pipeline_reports_budget(workflow):
    state = workflow.run_pipeline("convex", 20, seed=2)["state"]
    assert state["report"].budget_bound is not None
    assert state["report"].edge_count <= state["report"].budget_bound


def test_augment_pipeline_records_steiner_points(workflow):
    state = workflow.run_pipeline("augment", 6, seed=4)["state"]
    assert state.get("error") is None
    assert state["report"].steiner_count == state["steiner_count"]


def test_unknown_kind_is_routed_to_the_error_node(workflow):
    result = workflow.run_pipeline("spiral", 10, seed=0)
    assert not result["success"]
    assert "Unknown pipeline kind" in result["state"]["error"]
    assert result["state"]["summary"].startswith("Pipeline failed")


def test_generation_errors_are_captured(workflow):
    result = workflow.run_pipeline("convex", 1, seed=0)
    assert not result["success"]
    assert "Error generating points" in result["state"]["error"]


def test_recording(workflow):
    result = workflow.run_pipeline("onesided", 8, seed=3, record=True)
    record_id = result["state"]["record_id"]
    saved = workflow.store.get_report(record_id)
    assert saved == result["state"]["report"]
