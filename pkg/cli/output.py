"""
CSV and JSON rendering of tables, reports and Monte-Carlo results
"""
import csv
import io
import json
import math
from typing import Any, Dict, List, Optional, Sequence, Tuple

from models.distribution import PmfTable, SampleBatch
from models.report import AuditReport, McResult, OPTIONAL_ROW_FIELDS, ROW_FIELDS

DIGITS = 17
PMF_COLUMNS = ('y1', 'y2', 'prob')
SAMPLE_COLUMNS = ('y1', 'y2')
CLOSED_FORM_COLUMNS = ('label', 'closed_form')
AUDIT_COLUMNS = ROW_FIELDS + OPTIONAL_ROW_FIELDS
MC_COLUMNS = ('convention', 'samples', 'tv_distance', 'chi_square', 'p_value', 'dof',
              'tv_printed', 'censored', 'selected', 'seed', 'n', 'alpha')


def format_number(value: float, digits: int = DIGITS) -> str:
    """Shortest text that parses back to the same double at 17 digits"""
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.{digits}g}"


def _cell(value: Any, digits: int) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_number(value, digits)
    return str(value)


def _rounded(value: Any, digits: int) -> Any:
    """Apply the CSV precision to every float of a JSON payload"""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        return value if not math.isfinite(value) else float(format_number(value, digits))
    if isinstance(value, dict):
        return {k: _rounded(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_rounded(v, digits) for v in value]
    return value


def render_json(payload: Dict, digits: int = DIGITS) -> str:
    return json.dumps(_rounded(payload, digits), indent=2) + "\n"


def render_csv(columns: Sequence[str], rows: Sequence[Dict], digits: int = DIGITS,
               metadata: Optional[Dict[str, Any]] = None) -> str:
    """Header comments for metadata, then a header row and one line per row"""
    buffer = io.StringIO()
    for key, value in (metadata or {}).items():
        buffer.write(f"# {key}={_cell(value, digits)}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(column), digits) for column in columns])
    return buffer.getvalue()


def parse_csv(text: str) -> Tuple[Dict[str, str], List[Dict[str, str]]]:
    """Metadata comments and data rows of rendered CSV, all values as text"""
    metadata: Dict[str, str] = {}
    body = []
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition("=")
            metadata[key] = value
        elif line:
            body.append(line)
    return metadata, list(csv.DictReader(body))


# per-command payloads

def pmf_metadata(table: PmfTable) -> Dict[str, Any]:
    """Truncation header emitted for the negative families"""
    if not table.spec.family.negative:
        return {}
    return {
        'family': table.spec.family.value,
        'truncated': table.truncated,
        'truncation_bound': table.truncation_bound,
        'captured_mass': table.captured_mass,
        'tail_tol': table.tail_tol
    }


def render_pmf(table: PmfTable, fmt: str, digits: int = DIGITS) -> str:
    if fmt == "json":
        return render_json(table.to_dict(), digits)
    rows = [{'y1': point[0], 'y2': point[1], 'prob': prob} for point, prob in table.entries]
    return render_csv(PMF_COLUMNS, rows, digits, pmf_metadata(table))


def render_sample(batch: SampleBatch, fmt: str, digits: int = DIGITS) -> str:
    if fmt == "json":
        return render_json(batch.to_dict(), digits)
    rows = [{'y1': y1, 'y2': y2} for y1, y2 in batch.draws]
    return render_csv(SAMPLE_COLUMNS, rows, digits,
                      {'seed': batch.seed, 'convention': batch.convention})


def render_closed_forms(values: Dict[str, float], spec_dict: Dict, fmt: str,
                        digits: int = DIGITS) -> str:
    rows = [{'label': label, 'closed_form': value} for label, value in values.items()]
    if fmt == "json":
        return render_json({'spec': spec_dict, 'closed_forms': rows}, digits)
    return render_csv(CLOSED_FORM_COLUMNS, rows, digits)


def render_report(report: AuditReport, fmt: str, digits: int = DIGITS) -> str:
    if fmt == "json":
        return render_json(report.to_dict(), digits)
    rows = [row.to_dict() for row in report.rows]
    return render_csv(AUDIT_COLUMNS, rows, digits, {'suite': report.suite})


def render_mc(results: Sequence[McResult], fmt: str, digits: int = DIGITS) -> str:
    rows = [result.to_dict() for result in results]
    if fmt == "json":
        return render_json({'results': rows}, digits)
    return render_csv(MC_COLUMNS, rows, digits)
