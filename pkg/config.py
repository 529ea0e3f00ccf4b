"""
Configuration module for environment-specific settings.
"""

import logging
import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

VERSION = "1.0.0"

# Environment variables
LAB_ENV = os.environ.get('LAB_ENV', 'development')
IS_PRODUCTION = LAB_ENV == 'production'

LAB_OUTPUT_DIR = os.environ.get('LAB_OUTPUT_DIR')
OUTPUT_DIR = Path(LAB_OUTPUT_DIR) if LAB_OUTPUT_DIR else Path.cwd() / "output"

LAB_UNITS = os.environ.get('LAB_UNITS', 'natural')
LAB_CONFIG_FILE = os.environ.get('LAB_CONFIG_FILE')
LOG_LEVEL = os.environ.get('LAB_LOG_LEVEL', 'INFO').upper()

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: str = None):
    """Route every module logger to stderr; data files are the only stdout-free output."""
    logging.basicConfig(level=getattr(logging, level or LOG_LEVEL, logging.INFO), format=LOG_FORMAT)


def validate_production_config():
    """Validate that all required environment variables are set for production."""
    if not IS_PRODUCTION:
        return True

    required_vars = [
        ('LAB_OUTPUT_DIR', LAB_OUTPUT_DIR),
    ]

    missing_vars = [name for name, value in required_vars if not value]

    if missing_vars:
        raise ValueError(f"Missing required environment variables for production: {', '.join(missing_vars)}")

    if LAB_UNITS not in ('natural', 'si'):
        raise ValueError(f"LAB_UNITS must be 'natural' or 'si', got '{LAB_UNITS}'")

    return True
