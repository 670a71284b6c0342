"""Report tables: survey-vs-survey matrices, variable-vs-survey grids,
per-variable histograms.

A cell is highlighted when its coefficient is significant (p < 0.05) and at
least moderate on the 2-decimal-rounded magnitude (|r| >= 0.36). When both
Pearson and Spearman were requested, cells that both methods highlight get a
confirmation footnote; confirmation is reported, never used as a filter.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..stats import (
    CorrelationResult,
    DegenerateVarianceError,
    Method,
    PairedSeries,
    Strength,
    STRENGTH_RANK,
    correlate,
)
from .dataset import InsufficientDataError, PreparedDataset

SURVEY_LABELS = {
    "people": "# of People",
    "psqi": "PSQI",
    "pss": "PSS",
    "k10": "K10",
}
VARIABLE_LABELS = {
    "temperature": "Temperature",
    "pressure": "Pressure",
    "humidity": "Humidity",
    "luminosity": "Light",
    "audio": "Audio",
}
# row order of the variable tables
VARIABLE_ROWS = ("temperature", "pressure", "humidity", "luminosity", "audio")
SURVEY_ORDER = ("people", "psqi", "pss", "k10")

MIN_CELL_N = 3


@dataclass(frozen=True)
class Cell:
    row: str
    col: str
    method: Method
    n: int
    result: CorrelationResult | None = None
    note: str | None = None  # "degenerate" | "insufficient" for dashed cells

    @property
    def highlighted(self) -> bool:
        return (
            self.result is not None
            and self.result.significant
            and STRENGTH_RANK[self.result.strength] >= STRENGTH_RANK[Strength.MODERATE]
        )


@dataclass(frozen=True)
class ReportTable:
    kind: str  # survey_matrix | variable_survey | histogram
    methods: tuple[Method, ...]
    row_keys: tuple[str, ...]
    col_keys: tuple[str, ...]
    cells: tuple[Cell, ...]
    footnotes: tuple[str, ...] = ()

    def cell(self, method: Method, row: str, col: str) -> Cell | None:
        for cell in self.cells:
            if cell.method is method and cell.row == row and cell.col == col:
                return cell
        return None


@dataclass(frozen=True)
class HistogramBin:
    lower: float
    upper: float
    count: int


@dataclass(frozen=True)
class Histogram:
    variable: str
    bins: tuple[HistogramBin, ...]
    n: int


def _correlation_cell(
    dataset: PreparedDataset, method: Method, row: str, col: str
) -> Cell:
    xs, ys = dataset.paired_columns(row, col)
    n = len(xs)
    if n < MIN_CELL_N:
        return Cell(row=row, col=col, method=method, n=n, note="insufficient")
    try:
        result = correlate(method, PairedSeries(xs, ys))
    except DegenerateVarianceError:
        return Cell(row=row, col=col, method=method, n=n, note="degenerate")
    return Cell(row=row, col=col, method=method, n=n, result=result)


def _require_rows(dataset: PreparedDataset):
    if dataset.n < MIN_CELL_N:
        raise InsufficientDataError(
            f"need at least {MIN_CELL_N} valid submissions, have {dataset.n}"
        )


def _filter_note(dataset: PreparedDataset) -> str:
    if dataset.include_invalid:
        return "filters: invalid submissions included on request (duplicates dropped)"
    return "filters: stored-verdict validity screen, duplicates dropped"


def _mutual_confirmation_notes(cells: tuple[Cell, ...]) -> list[str]:
    by_pair: dict[tuple[str, str], set[Method]] = {}
    for cell in cells:
        if cell.highlighted:
            by_pair.setdefault((cell.row, cell.col), set()).add(cell.method)
    notes = []
    for (row, col), methods in sorted(by_pair.items()):
        if {Method.PEARSON, Method.SPEARMAN} <= methods:
            notes.append(
                f"{row} vs {col}: moderate+ and significant under both "
                "Pearson and Spearman"
            )
    return notes


def build_survey_matrix(dataset: PreparedDataset, method: Method) -> ReportTable:
    """Symmetric 4x4 grid over the survey scores and the people count.

    The diagonal stays empty. Cells touching the sleep score use only
    first-of-day rows (pairwise deletion), with the reduced n recorded.
    """
    _require_rows(dataset)
    cells: list[Cell] = []
    computed: dict[tuple[str, str], Cell] = {}
    for i, row in enumerate(SURVEY_ORDER):
        for j, col in enumerate(SURVEY_ORDER):
            if i == j:
                continue
            if (col, row) in computed:
                mirror = computed[(col, row)]
                cells.append(Cell(
                    row=row, col=col, method=method, n=mirror.n,
                    result=mirror.result, note=mirror.note,
                ))
                continue
            cell = _correlation_cell(dataset, method, row, col)
            computed[(row, col)] = cell
            cells.append(cell)
    footnotes = [f"n = {dataset.n} analyzable submissions", _filter_note(dataset)]
    psqi_n = len(dataset.paired_columns("psqi", "pss")[0])
    footnotes.append(
        f"psqi cells use the {psqi_n} first-of-day submissions (pairwise deletion)"
    )
    return ReportTable(
        kind="survey_matrix",
        methods=(method,),
        row_keys=SURVEY_ORDER,
        col_keys=SURVEY_ORDER,
        cells=tuple(cells),
        footnotes=tuple(footnotes),
    )


def build_variable_survey_table(
    dataset: PreparedDataset, methods: tuple[Method, ...]
) -> ReportTable:
    """Five variable rows by four survey columns, one section per method.

    Degenerate cells (a constant series) render dashed rather than failing
    the whole table.
    """
    _require_rows(dataset)
    if not methods:
        raise ValueError("at least one correlation method is required")
    cells = []
    for method in methods:
        for variable in VARIABLE_ROWS:
            for column in SURVEY_ORDER:
                cells.append(_correlation_cell(dataset, method, variable, column))
    footnotes = [f"n = {dataset.n} analyzable submissions", _filter_note(dataset)]
    footnotes.extend(_mutual_confirmation_notes(tuple(cells)))
    return ReportTable(
        kind="variable_survey",
        methods=tuple(methods),
        row_keys=VARIABLE_ROWS,
        col_keys=SURVEY_ORDER,
        cells=tuple(cells),
        footnotes=tuple(footnotes),
    )


def build_histogram(
    dataset: PreparedDataset, variable: str, bins: int = 20
) -> Histogram:
    """Equal-width bins over [min, max] of the per-submission aggregates."""
    if dataset.n < 1:
        raise InsufficientDataError("histogram needs at least one submission")
    if bins < 1:
        raise ValueError("bin count must be positive")
    values = [row.variable_value(variable) for row in dataset.rows]
    lo, hi = min(values), max(values)
    if lo == hi:
        return Histogram(
            variable=variable,
            bins=(HistogramBin(lower=lo, upper=hi, count=len(values)),),
            n=len(values),
        )
    width = (hi - lo) / bins
    counts = [0] * bins
    for value in values:
        index = min(int((value - lo) / width), bins - 1)
        counts[index] += 1
    return Histogram(
        variable=variable,
        bins=tuple(
            HistogramBin(lower=lo + i * width, upper=lo + (i + 1) * width,
                         count=counts[i])
            for i in range(bins)
        ),
        n=len(values),
    )
