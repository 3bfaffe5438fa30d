"""Foreground-map evaluation: structure measure, baselines and meta-measure
protocols, backed by the C++ core."""

try:
    from . import _smeval as _impl  # wheel layout
except ImportError:  # pragma: no cover - build-tree layout used by ctest
    import _smeval as _impl

auc = _impl.auc
average_precision = _impl.average_precision
f_beta = _impl.f_beta
fbw = _impl.fbw
foreground_centroid = _impl.foreground_centroid
gaussian_baseline_map = _impl.gaussian_baseline_map
load_binary_map = _impl.load_binary_map
load_gray_map = _impl.load_gray_map
measures = _impl.measures
object_component = _impl.object_component
object_score = _impl.object_score
perturb_gt = _impl.perturb_gt
pr_curve = _impl.pr_curve
rank_descending = _impl.rank_descending
region_score = _impl.region_score
roc_curve = _impl.roc_curve
save_binary_map = _impl.save_binary_map
save_gray_map = _impl.save_gray_map
spearman_rho = _impl.spearman_rho
ssim_block = _impl.ssim_block
structure_measure = _impl.structure_measure

__all__ = [
    "auc",
    "average_precision",
    "f_beta",
    "fbw",
    "foreground_centroid",
    "gaussian_baseline_map",
    "load_binary_map",
    "load_gray_map",
    "measures",
    "object_component",
    "object_score",
    "perturb_gt",
    "pr_curve",
    "rank_descending",
    "region_score",
    "roc_curve",
    "save_binary_map",
    "save_gray_map",
    "spearman_rho",
    "ssim_block",
    "structure_measure",
]
