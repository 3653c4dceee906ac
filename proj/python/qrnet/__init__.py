"""Questioner-responder interaction network analytics for Stack Exchange dumps.

The heavy lifting lives in the `_qrnet` extension module; this package adds
thin conveniences on top.
"""

import json as _json
import os as _os

from qrnet._qrnet import (
    AnomalyCounts,
    CentralityTable,
    Graph,
    IngestStats,
    Interaction,
    PostRecord,
    PostType,
    __version__,
    analyze_file_json,
    build_graph,
    classify_roles,
    compute_centralities,
    correlation_matrix,
    derive_interactions,
    edge_weight,
    metric_stats,
    parse_posts_file,
    qr_ratio,
)

__all__ = [
    "AnomalyCounts",
    "CentralityTable",
    "Graph",
    "IngestStats",
    "Interaction",
    "PostRecord",
    "PostType",
    "__version__",
    "analyze_file",
    "analyze_file_json",
    "build_graph",
    "classify_roles",
    "compute_centralities",
    "correlation_matrix",
    "derive_interactions",
    "edge_weight",
    "metric_stats",
    "parse_posts_file",
    "qr_ratio",
]


def analyze_file(path, site="", **options):
    """Run the full pipeline on a decompressed Posts.xml file.

    Returns the analysis report as a dict with the same layout as the CLI's
    report.json. Options: epsilon, time_unit, damping, weighted, undirected,
    reverse_edges, threads.
    """
    if not site:
        site = _os.path.splitext(_os.path.basename(path))[0]
    return _json.loads(analyze_file_json(str(path), site=site, **options))
