from __future__ import annotations

import csv
import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional

from ..config import BENCH_CSV_FIELDS, EDGES_CSV_FIELDS, METADATA_SUFFIX
from ..models.data_schemas import BenchReport, CorpusReport
from ..models.raster import ImageRGB
from ..utils.exceptions import ImageIOError
from ..utils.image_io import save_image


def metadata_path_for(image_path: Path) -> Path:
    return image_path.with_name(image_path.stem + METADATA_SUFFIX)


def _write_text(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ImageIOError(f"cannot write {path}: {exc}") from exc


def write_outputs(
    image: ImageRGB,
    output_path: Path,
    metadata: dict[str, Any],
    write_metadata_json: bool = True,
) -> tuple[Path, Optional[Path]]:
    image_path = save_image(image, output_path)
    if not write_metadata_json:
        return image_path, None

    json_path = metadata_path_for(image_path)
    payload = dict(metadata)
    payload.setdefault("run_timestamp", datetime.now(timezone.utc).isoformat().replace("+00:00", "Z"))
    payload.setdefault("width", image.width)
    payload.setdefault("height", image.height)
    _write_text(json_path, json.dumps(payload, indent=2, ensure_ascii=False))
    return image_path, json_path


def write_bench_csv(report: BenchReport, path: Path) -> Path:
    rows = [
        {
            "variant": row.variant,
            "width": row.width,
            "height": row.height,
            "iters": row.iters,
            "smooth_s": f"{row.smooth_s:.6f}",
            "restore_s": f"{row.restore_s:.6f}",
            "total_s": f"{row.total_s:.6f}",
        }
        for row in report.rows
    ]
    return _write_csv(path, BENCH_CSV_FIELDS, rows)


def write_edges_csv(report: CorpusReport, path: Path) -> Path:
    rows = [
        {
            "image": record.name,
            "precision": f"{record.result.precision:.6f}",
            "recall": f"{record.result.recall:.6f}",
            "f_measure": f"{record.result.f_measure:.6f}",
            "best_threshold": f"{record.result.best_threshold:.4f}",
        }
        for record in report.records
    ]
    rows.append(
        {
            "image": "MEAN",
            "precision": f"{report.mean_precision:.6f}",
            "recall": f"{report.mean_recall:.6f}",
            "f_measure": f"{report.mean_f_measure:.6f}",
            "best_threshold": "",
        }
    )
    return _write_csv(path, EDGES_CSV_FIELDS, rows)


def _write_csv(path: Path, fields, rows: list[dict[str, Any]]) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.DictWriter(handle, fieldnames=list(fields))
            writer.writeheader()
            writer.writerows(rows)
    except OSError as exc:
        raise ImageIOError(f"cannot write {path}: {exc}") from exc
    return path
