"""Enhancement-order ablation harness."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .image import GrayImage
from .pipeline import PipelineConfig, run_pipeline
from .scoring import score_accuracy

ABLATION_ORDERS: tuple[tuple[str, ...], ...] = (
    ("contrast",),
    ("contrast", "intensity"),
    ("contrast", "intensity", "morph"),
    ("morph", "contrast", "intensity"),
)


def order_label(order: tuple[str, ...]) -> str:
    return "+".join(order) if order else "none"


@dataclass
class AblationRow:
    order: tuple[str, ...]
    accuracies: list[float]
    errors: list[str]

    @property
    def mean(self) -> float:
        return sum(self.accuracies) / len(self.accuracies) if self.accuracies else 0.0


def run_ablation(
    pages: list[tuple[GrayImage, str]],
    config: PipelineConfig = PipelineConfig(),
    orders: tuple[tuple[str, ...], ...] = ABLATION_ORDERS,
) -> list[AblationRow]:
    """Accuracy of every enhancement order over (image, reference) pages.

    A pipeline failure on a page scores 0.0 for that page and the error
    is recorded, so orders that break segmentation stay comparable.
    """
    rows = []
    for order in orders:
        cfg = replace(config, enhance_order=order)
        accs: list[float] = []
        errors: list[str] = []
        for image, ref in pages:
            try:
                report = run_pipeline(image, cfg)
                accs.append(score_accuracy(ref, report.text))
            except Exception as exc:  # scored as a total miss
                accs.append(0.0)
                errors.append(f"{order_label(order)}: {type(exc).__name__}: {exc}")
        rows.append(AblationRow(order=order, accuracies=accs, errors=errors))
    return rows


def format_ablation(rows: list[AblationRow]) -> str:
    lines = [f"{'order':<28} {'mean':>6}  per-page"]
    for row in rows:
        accs = " ".join(f"{a:.2f}" for a in row.accuracies)
        lines.append(f"{order_label(row.order):<28} {row.mean:6.3f}  {accs}")
    return "\n".join(lines)
