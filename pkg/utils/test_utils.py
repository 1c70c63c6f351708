#!/usr/bin/env python

import logging

from .logging_utils import QUIET_LOGGERS, init_logging
from .table_utils import format_table


def test_format_table_alignment():
    text = format_table(("SCHEME", "R1"), [("ach1", 0.5), ("cof-outer", 0.85221)], precision=3)
    header, rule, first, second = text.splitlines()
    assert header == "SCHEME    |    R1"
    assert rule == "-" * len(header)
    assert first == "ach1      | 0.500"
    assert second == "cof-outer | 0.852"


def test_init_logging_quiets_noisy_libraries():
    init_logging("DEBUG")
    for name in QUIET_LOGGERS:
        assert logging.getLogger(name).level == logging.WARNING
