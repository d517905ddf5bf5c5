"""Run log recording every CLI invocation.

Stores one row per run in ``metadata/run_log.parquet`` under the output
directory.
"""

from __future__ import annotations

import logging
from datetime import datetime, timezone
from pathlib import Path

import pandas as pd
import pyarrow as pa
import pyarrow.parquet as pq

logger = logging.getLogger(__name__)

_LOG_COLUMNS = [
    "command",
    "model",
    "status",
    "error",
    "exit_code",
    "duration_s",
    "run_at",
]

_SCHEMA = pa.schema(
    [
        ("command", pa.string()),
        ("model", pa.string()),
        ("status", pa.string()),
        ("error", pa.string()),
        ("exit_code", pa.int64()),
        ("duration_s", pa.float64()),
        ("run_at", pa.timestamp("us", tz="UTC")),
    ]
)


class RunLog:
    """Append-only log of analysis runs.

    Parameters
    ----------
    out_dir : Path
        Output directory (the one containing ``metadata/``).
    """

    def __init__(self, out_dir: Path) -> None:
        self.out_dir = Path(out_dir)
        self.log_path = self.out_dir / "metadata" / "run_log.parquet"
        self.log_path.parent.mkdir(parents=True, exist_ok=True)

    def log(
        self,
        command: str,
        model: str,
        status: str,
        exit_code: int,
        duration_s: float,
        error: str | None = None,
    ) -> None:
        """Record one run.

        Parameters
        ----------
        command : str
            CLI subcommand.
        model : str
            Registry name or model path.
        status : str
            ``"ok"`` or ``"error"``.
        exit_code : int
            Process exit code.
        duration_s : float
            Wall time in seconds.
        error : str or None
            Error class name for failed runs.
        """
        existing = self._read_log()
        new_row = pd.DataFrame([{
            "command": command,
            "model": model,
            "status": status,
            "error": error,
            "exit_code": exit_code,
            "duration_s": float(duration_s),
            "run_at": datetime.now(timezone.utc),
        }])
        combined = new_row if existing.empty else pd.concat([existing, new_row], ignore_index=True)
        self._write_log(combined)
        logger.info("Logged %s run of %s on %s (exit %d)", status, command, model, exit_code)

    def latest(self, command: str) -> pd.Series | None:
        """Most recent run of ``command``, or None if it never ran."""
        log = self._read_log()
        runs = log.loc[log["command"] == command]
        if runs.empty:
            return None
        return runs.sort_values("run_at").iloc[-1]

    def status(self) -> pd.DataFrame:
        """One row per command: run count, failures, last status and time."""
        log = self._read_log()
        status_cols = ["command", "runs", "failures", "last_status", "last_run"]
        if log.empty:
            return pd.DataFrame(columns=status_cols)
        log = log.sort_values("run_at")
        summary = (
            log.groupby("command")
            .agg(
                runs=("status", "size"),
                failures=("status", lambda s: int((s != "ok").sum())),
                last_status=("status", "last"),
                last_run=("run_at", "max"),
            )
            .reset_index()
        )
        return summary

    # -- Private helpers --

    def _read_log(self) -> pd.DataFrame:
        if not self.log_path.exists():
            return pd.DataFrame(columns=_LOG_COLUMNS)
        return pq.read_table(self.log_path).to_pandas()

    def _write_log(self, df: pd.DataFrame) -> None:
        table = pa.Table.from_pandas(df[_LOG_COLUMNS], schema=_SCHEMA, preserve_index=False)
        pq.write_table(table, self.log_path)
