import json
from typing import Any, Dict, List, Optional

import pandas as pd
from sqlalchemy import create_engine, text
from sqlalchemy.exc import SQLAlchemyError

from chordgraph import logger
from chordgraph.config import Config
from chordgraph.models import RunReport


class ReportStore:
    """Run history kept in a SQL database"""

    def __init__(self, database_url: Optional[str] = None):
        self.database_url = database_url or Config.DATABASE_URL
        self.engine = create_engine(self.database_url)
        self._create_tables()

    def _create_tables(self):
        """Create the history table if it doesn't exist"""
        with self.engine.connect() as conn:
            conn.execute(text("""
                CREATE TABLE IF NOT EXISTS run_reports (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    command TEXT NOT NULL,
                    n INTEGER,
                    edge_count INTEGER,
                    budget_bound INTEGER,
                    pairs_tested INTEGER,
                    failures INTEGER,
                    max_detour REAL,
                    steiner_count INTEGER,
                    seed INTEGER,
                    elapsed_seconds REAL,
                    report TEXT,
                    created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
                )
            """))
            conn.commit()

    def _row_to_dict(self, row) -> Dict[str, Any]:
        return dict(row._mapping)

    def save_report(self, report: RunReport) -> int:
        try:
            with self.engine.connect() as conn:
                result = conn.execute(text("""
                    INSERT INTO run_reports
                    (command, n, edge_count, budget_bound, pairs_tested, failures,
                     max_detour, steiner_count, seed, elapsed_seconds, report)
                    VALUES (:command, :n, :edge_count, :budget_bound, :pairs_tested, :failures,
                            :max_detour, :steiner_count, :seed, :elapsed_seconds, :report)
                """), {
                    "command": report.command,
                    "n": report.n,
                    "edge_count": report.edge_count,
                    "budget_bound": report.budget_bound,
                    "pairs_tested": report.pairs_tested,
                    "failures": report.failures,
                    "max_detour": report.max_detour,
                    "steiner_count": report.steiner_count,
                    "seed": report.seed,
                    "elapsed_seconds": report.elapsed_seconds,
                    "report": report.model_dump_json(),
                })
                conn.commit()
                record_id = int(result.lastrowid)
        except SQLAlchemyError as e:
            logger.error(f"Failed to save run report: {e}")
            raise
        logger.debug(f"Saved run report {record_id} for '{report.command}'")
        return record_id

    def get_history(self, limit: int = 20) -> List[Dict[str, Any]]:
        with self.engine.connect() as conn:
            result = conn.execute(text("""
                SELECT * FROM run_reports
                ORDER BY id DESC
                LIMIT :limit
            """), {"limit": limit})
            history = []
            for row in result.fetchall():
                record = self._row_to_dict(row)
                record["report"] = json.loads(record["report"]) if record.get("report") else None
                if record.get("created_at") is not None:
                    record["created_at"] = str(record["created_at"])
                history.append(record)
            return history

    def get_report(self, record_id: int) -> Optional[RunReport]:
        with self.engine.connect() as conn:
            row = conn.execute(text("SELECT report FROM run_reports WHERE id = :id"), {"id": record_id}).fetchone()
        return RunReport.model_validate_json(row[0]) if row else None

    def get_history_frame(self, limit: int = 20) -> pd.DataFrame:
        return pd.read_sql_query(
            text("SELECT id, command, n, edge_count, budget_bound, pairs_tested, failures, max_detour, "
                 "steiner_count, seed, created_at FROM run_reports ORDER BY id DESC LIMIT :limit"),
            self.engine,
            params={"limit": limit},
        )
