import time
from typing import Any, Dict, Optional

from langgraph.graph import END, StateGraph

from chordgraph import logger
from chordgraph.convex import build_convex, build_one_sided, edge_budget
from chordgraph.database import ReportStore
from chordgraph.gabriel import gabriel_graph
from chordgraph.generators import gen_convex, gen_onesided, gen_uniform, lattice_side
from chordgraph.geometry import Direction
from chordgraph.reports import verify_graph
from chordgraph.steiner import augment_heuristic, gabriel_lattice, triangulate

KINDS = ("convex", "onesided", "lattice", "augment")
ONE_SIDED_DIRECTION = Direction(0.0)
EXHAUSTIVE_PAIR_LIMIT = 60
SAMPLED_PAIRS = 1000


class PipelineWorkflow:
    """Generate an instance, build its graph, verify every (or a sample of) pair(s), record the run"""

    def __init__(self, store: Optional[ReportStore] = None):
        self._store = store
        self.graph = self._build_graph()

    @property
    def store(self) -> ReportStore:
        if self._store is None:
            self._store = ReportStore()
        return self._store

    def _build_graph(self) -> StateGraph:
        """Build the LangGraph workflow"""

        workflow = StateGraph(Dict[str, Any])

        workflow.add_node("generate_points", self._generate_points_node)
        workflow.add_node("build_graph", self._build_graph_node)
        workflow.add_node("verify_graph", self._verify_graph_node)
        workflow.add_node("summarize", self._summarize_node)
        workflow.add_node("handle_error", self._handle_error_node)

        workflow.set_entry_point("generate_points")

        workflow.add_conditional_edges(
            "generate_points",
            self._should_continue,
            {
                "continue": "build_graph",
                "error": "handle_error"
            }
        )

        workflow.add_conditional_edges(
            "build_graph",
            self._should_continue,
            {
                "continue": "verify_graph",
                "error": "handle_error"
            }
        )

        workflow.add_conditional_edges(
            "verify_graph",
            self._should_continue,
            {
                "continue": "summarize",
                "error": "handle_error"
            }
        )

        workflow.add_edge("summarize", END)
        workflow.add_edge("handle_error", END)

        return workflow.compile()

    def _should_continue(self, state: Dict[str, Any]) -> str:
        return "error" if state.get("error") else "continue"

    def _generate_points_node(self, state: Dict[str, Any]) -> Dict[str, Any]:
        kind, n, seed = state["kind"], state["n"], state["seed"]
        try:
            if kind == "convex":
                state["points"] = gen_convex(n, seed)
            elif kind == "onesided":
                state["points"] = gen_onesided(n, ONE_SIDED_DIRECTION, seed)
            elif kind == "lattice":
                side = lattice_side(n)
                instance = gabriel_lattice(side, side, state.get("jitter", 0.05), seed)
                state["points"] = instance.points
                state["retries"] = instance.retries
            elif kind == "augment":
                state["points"] = gen_uniform(n, seed)
            else:
                state["error"] = f"Unknown pipeline kind '{kind}'; expected one of {', '.join(KINDS)}"
            return state
        except Exception as e:
            state["error"] = f"Error generating points: {str(e)}"
            return state

    def _build_graph_node(self, state: Dict[str, Any]) -> Dict[str, Any]:
        kind, ps = state["kind"], state["points"]
        n = len(ps)
        try:
            if kind == "convex":
                state["graph"] = build_convex(ps)
                state["budget_bound"] = 2 * n + edge_budget(n)
            elif kind == "onesided":
                state["graph"] = build_one_sided(ps, ONE_SIDED_DIRECTION)
                state["budget_bound"] = 2 * n - 3
            elif kind == "lattice":
                state["graph"] = gabriel_graph(ps)
            else:
                result = augment_heuristic(ps, seed=state["seed"])
                state["steiner_count"] = result.steiner_count
                state["augment_succeeded"] = result.succeeded
                state["graph"] = result.graph if result.graph is not None else triangulate(result.augmented)
            return state
        except Exception as e:
            state["error"] = f"Error building graph: {str(e)}"
            return state

    def _verify_graph_node(self, state: Dict[str, Any]) -> Dict[str, Any]:
        try:
            g = state["graph"]
            pairs = "all" if g.n <= EXHAUSTIVE_PAIR_LIMIT else SAMPLED_PAIRS
            report = verify_graph(g, pairs, state["seed"], command=f"pipeline {state['kind']}",
                                  budget_bound=state.get("budget_bound"))
            if state.get("steiner_count") is not None:
                report = report.model_copy(update={"steiner_count": state["steiner_count"]})
            state["report"] = report
            return state
        except Exception as e:
            state["error"] = f"Error verifying graph: {str(e)}"
            return state

    def _summarize_node(self, state: Dict[str, Any]) -> Dict[str, Any]:
        report = state["report"]
        verdict = "passed" if report.passed else "FAILED"
        summary = (f"{state['kind']} instance with {report.n} points and {report.edge_count} edges: "
                   f"{report.pairs_tested - report.failures}/{report.pairs_tested} pairs verified, {verdict}")
        if report.budget_bound is not None:
            summary += f"; budget {report.edge_count}/{report.budget_bound}"
        if report.steiner_count is not None:
            summary += f"; {report.steiner_count} Steiner points"
        state["summary"] = summary
        if state.get("record"):
            try:
                state["record_id"] = self.store.save_report(report)
            except Exception as e:
                logger.error(f"Could not record pipeline run: {e}")
        return state

    def _handle_error_node(self, state: Dict[str, Any]) -> Dict[str, Any]:
        logger.error(f"Pipeline {state.get('kind')} failed: {state.get('error')}")
        state["summary"] = f"Pipeline failed: {state.get('error')}"
        return state

    def run_pipeline(self, kind: str, n: int, seed: int, jitter: float = 0.05,
                     record: bool = False) -> Dict[str, Any]:
        start_time = time.time()

        initial_state = {
            "kind": kind,
            "n": n,
            "seed": seed,
            "jitter": jitter,
            "record": record,
            "points": None,
            "graph": None,
            "report": None,
            "summary": None,
            "error": None,
            "timestamp": time.time()
        }

        try:
            final_state = self.graph.invoke(initial_state)
            execution_time = time.time() - start_time
            report = final_state.get("report")
            success = (not final_state.get("error") and report is not None and report.passed
                       and final_state.get("augment_succeeded", True))
            return {
                "success": bool(success),
                "state": final_state,
                "execution_time": execution_time
            }
        except Exception as e:
            execution_time = time.time() - start_time
            initial_state["error"] = f"Workflow execution failed: {str(e)}"
            return {
                "success": False,
                "state": initial_state,
                "execution_time": execution_time
            }
