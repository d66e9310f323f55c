"""Exact replay of the symbolic necessity argument, stage by stage."""

from .catalog import Catalog, CatalogError, default_catalog
from .report import StageReport
from .stages import STAGES, DependencyError, run_all

__all__ = ["Catalog", "CatalogError", "default_catalog", "StageReport", "STAGES", "DependencyError", "run_all"]
