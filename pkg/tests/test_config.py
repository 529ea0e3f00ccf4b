"""
Unit tests for environment configuration.
"""

import unittest
import os
import logging
from unittest.mock import patch
import sys

# Add the project root to the path so we can import our modules
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import config


class TestProductionConfig(unittest.TestCase):
    """Test cases for production environment validation."""

    def test_development_always_valid(self):
        with patch('config.IS_PRODUCTION', False), patch('config.LAB_OUTPUT_DIR', None):
            self.assertTrue(config.validate_production_config())

    def test_production_requires_output_dir(self):
        with patch('config.IS_PRODUCTION', True), patch('config.LAB_OUTPUT_DIR', None):
            with self.assertRaises(ValueError) as ctx:
                config.validate_production_config()
        self.assertIn("LAB_OUTPUT_DIR", str(ctx.exception))

    def test_production_checks_units(self):
        with patch('config.IS_PRODUCTION', True), patch('config.LAB_OUTPUT_DIR', '/tmp/lab'), \
                patch('config.LAB_UNITS', 'imperial'):
            with self.assertRaises(ValueError):
                config.validate_production_config()

    def test_production_valid(self):
        with patch('config.IS_PRODUCTION', True), patch('config.LAB_OUTPUT_DIR', '/tmp/lab'), \
                patch('config.LAB_UNITS', 'si'):
            self.assertTrue(config.validate_production_config())


class TestLogging(unittest.TestCase):
    """Test cases for logging setup."""

    @patch('config.logging.basicConfig')
    def test_level_from_argument(self, mock_basic_config):
        config.configure_logging("DEBUG")
        mock_basic_config.assert_called_once_with(level=logging.DEBUG, format=config.LOG_FORMAT)

    @patch('config.logging.basicConfig')
    def test_unknown_level_falls_back_to_info(self, mock_basic_config):
        config.configure_logging("CHATTY")
        mock_basic_config.assert_called_once_with(level=logging.INFO, format=config.LOG_FORMAT)


if __name__ == '__main__':
    unittest.main()
