import time
from typing import Any, Dict, List

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from chordgraph import __version__, logger
from chordgraph.config import Config
from chordgraph.convex import build_convex, build_one_sided, edge_budget
from chordgraph.database import ReportStore
from chordgraph.gabriel import METHODS, check_gabriel_triangulation, gabriel_graph
from chordgraph.geometry import Direction, PointSet, perturb
from chordgraph.models import (
    GabrielRequest,
    GraphDocument,
    GraphResponse,
    OneSidedRequest,
    PipelineRequest,
    PipelineResponse,
    PointsRequest,
    RouteRequest,
    RouteResponse,
    VerifyPathRequest,
    VerifyReport,
    state_to_model,
)
from chordgraph.oracle import verify_path
from chordgraph.routing import route
from chordgraph.workflow import KINDS, PipelineWorkflow

app = FastAPI(
    title="chordgraph API",
    version=__version__
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

store = ReportStore()
workflow = PipelineWorkflow(store)


@app.on_event("startup")
async def startup_event():
    """Validate configuration on startup"""
    try:
        Config.validate()
        logger.info("Configuration validated successfully")
    except Exception as e:
        logger.error(f"Configuration error: {e}")
        raise e


def _points(request: PointsRequest) -> PointSet:
    ps = PointSet.from_points(request.points)
    return perturb(ps, request.perturb_seed) if request.perturb_seed is not None else ps


def _graph(document: GraphDocument):
    return document.to_graph()


@app.get("/info")
async def get_info() -> Dict[str, Any]:
    """Service version and numeric settings"""
    return {
        "version": __version__,
        "orientation_tolerance": Config.ORIENTATION_TOLERANCE,
        "duplicate_tolerance": Config.DUPLICATE_TOLERANCE,
        "angle_tolerance_deg": Config.ANGLE_TOLERANCE_DEG,
        "detour_bound": Config.DETOUR_BOUND,
        "exhaustive_max_points": Config.EXHAUSTIVE_MAX_POINTS,
        "pipeline_kinds": list(KINDS),
        "gabriel_methods": list(METHODS),
    }


@app.post("/build/convex", response_model=GraphResponse)
async def build_convex_graph(request: PointsRequest):
    try:
        g = build_convex(_points(request))
        return GraphResponse(graph=GraphDocument.from_graph(g), edge_count=g.edge_count,
                             budget_bound=2 * g.n + edge_budget(g.n))
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Convex construction failed: {str(e)}")


@app.post("/build/one-sided", response_model=GraphResponse)
async def build_one_sided_graph(request: OneSidedRequest):
    try:
        g = build_one_sided(_points(request), Direction(request.direction_deg))
        return GraphResponse(graph=GraphDocument.from_graph(g), edge_count=g.edge_count,
                             budget_bound=max(0, 2 * g.n - 3))
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"One-sided construction failed: {str(e)}")


@app.post("/gabriel", response_model=GraphResponse)
async def gabriel(request: GabrielRequest):
    try:
        g = gabriel_graph(_points(request), method=request.method)
        return GraphResponse(graph=GraphDocument.from_graph(g), edge_count=g.edge_count,
                             gabriel=check_gabriel_triangulation(g))
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Gabriel graph failed: {str(e)}")


@app.post("/route", response_model=RouteResponse)
async def route_pair(request: RouteRequest):
    try:
        g = _graph(request.graph)
        witness = route(g, request.source, request.target)
        if witness is None:
            return RouteResponse(found=False)
        return RouteResponse(found=True, witness=witness, report=verify_path(g, witness.vertices))
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Routing failed: {str(e)}")


@app.post("/verify/path", response_model=VerifyReport)
async def verify(request: VerifyPathRequest):
    try:
        return verify_path(_graph(request.graph), request.path, request.mode)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Verification failed: {str(e)}")


@app.post("/pipeline", response_model=PipelineResponse)
async def run_pipeline(request: PipelineRequest):
    if request.kind not in KINDS:
        raise HTTPException(status_code=400, detail=f"Unknown pipeline kind '{request.kind}'")
    try:
        result = workflow.run_pipeline(request.kind, request.n, request.seed, request.jitter, request.record)
        return PipelineResponse(
            success=result["success"],
            state=state_to_model(result["state"]),
            execution_time=result["execution_time"]
        )
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Pipeline failed: {str(e)}")


@app.get("/history", response_model=List[Dict[str, Any]])
async def get_history(limit: int = 20):
    """Recorded runs, newest first"""
    try:
        return store.get_history(limit)
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Failed to get run history: {str(e)}")


@app.exception_handler(Exception)
async def global_exception_handler(request, exc):
    """Global exception handler"""
    return JSONResponse(
        status_code=500,
        content={
            "error": "Internal server error",
            "detail": str(exc),
            "timestamp": time.time()
        }
    )
