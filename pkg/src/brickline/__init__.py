"""Brick-assembly toolkit: build-spec compiler, LDraw io, geometry and
order validation, tier scoring, inventory analytics, and design-tradeoff
lookup tables."""

from .builder import BuildSpec, compile, compile_text, pack_steps, parse_spec
from .catalog import Catalog, PartSpec, default_catalog, load_catalog
from .inventory import Inventory, bom, compare_provisioning, load_inventory, usage_ranking
from .ldraw import Document, document_from_model, parse, serialize, to_model
from .model import Model, Placement, SubRef, flatten, total_parts
from .report import Issue, IssueKind, Severity, ValidationReport
from .scorer import Score, Thresholds, diff_models, partial_credit, score
from .sequencer import check_order, estimate_pages, repair_order
from .triz import PrincipleTag, lookup, principle, tag_report
from .validator import validate

__version__ = "0.1.0"

__all__ = [
    "BuildSpec", "Catalog", "Document", "Inventory", "Issue", "IssueKind",
    "Model", "PartSpec", "Placement", "PrincipleTag", "Score", "Severity",
    "SubRef", "Thresholds", "ValidationReport", "bom", "check_order",
    "compare_provisioning", "compile", "compile_text", "default_catalog",
    "diff_models", "document_from_model", "estimate_pages", "flatten",
    "load_catalog", "load_inventory", "lookup", "pack_steps", "parse",
    "parse_spec", "partial_credit", "principle", "repair_order", "score",
    "serialize", "tag_report", "to_model", "total_parts", "usage_ranking",
    "validate", "__version__",
]
