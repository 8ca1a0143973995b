"""Configuration file support.

The config is an INI file; its path comes from the ``NECKDIAG_CONFIG``
environment variable or a CLI flag, and individual flags override it::

    [screen]
    classifier = /path/to/classifier.txt

    [calculus]
    harsh_table = /path/to/harsh.txt
    catalog = /path/to/catalog.txt

    [refine]
    mode = symmetry
    involution = identity
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .calculus import (
    HarshTable,
    RewriteRule,
    default_catalog,
    default_harsh_table,
    parse_catalog,
    parse_harsh_table,
)
from .diagrams import CanonicalMode
from .refine import DEFAULT_CONVENTION, MARK_INVOLUTIONS, RefineConvention
from .screen import DEFAULT_CLASSIFIER, SegmentClassifier

ENV_VAR = "NECKDIAG_CONFIG"


@dataclass
class AppConfig:
    classifier: SegmentClassifier = DEFAULT_CLASSIFIER
    harsh_table: HarshTable = field(default_factory=default_harsh_table)
    catalog: Sequence[RewriteRule] = field(default_factory=default_catalog)
    refine_convention: RefineConvention = DEFAULT_CONVENTION


def load_config(path: Optional[str] = None) -> AppConfig:
    """Load config from ``path``, the environment, or fall back to defaults."""
    if path is None:
        path = os.environ.get(ENV_VAR)
    cfg = AppConfig()
    if not path:
        return cfg
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise FileNotFoundError(f"config file not found: {path}")
    base = Path(path).parent

    def resolve(name: str) -> Path:
        p = Path(name)
        return p if p.is_absolute() else base / p

    if parser.has_option("screen", "classifier"):
        cfg.classifier = SegmentClassifier.from_text(
            resolve(parser.get("screen", "classifier")).read_text()
        )
    if parser.has_option("calculus", "harsh_table"):
        cfg.harsh_table = parse_harsh_table(
            resolve(parser.get("calculus", "harsh_table")).read_text()
        )
    if parser.has_option("calculus", "catalog"):
        cfg.catalog = parse_catalog(
            resolve(parser.get("calculus", "catalog")).read_text()
        )
    mode = CanonicalMode(parser.get("refine", "mode", fallback=cfg.refine_convention.mode.value))
    involution = parser.get("refine", "involution", fallback=cfg.refine_convention.involution)
    if involution not in MARK_INVOLUTIONS:
        raise ValueError(f"unknown mark involution {involution!r}")
    cfg.refine_convention = RefineConvention(mode, involution)
    return cfg
