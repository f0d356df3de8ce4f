"""
Main application entry point for the deformed trinomial toolkit
"""
import logging
import sys
from logging.handlers import RotatingFileHandler
from typing import Optional, Sequence

import yaml

from cli.controller import EXIT_INVALID, CliController, UsageError, parse_args
from models.settings import Settings


class TrinomialToolkit:
    """Command-line application"""

    def __init__(self, config_path: str = "config.yaml", log_level: Optional[str] = None):
        self.config = self._load_config(config_path)
        if log_level:
            self.config.setdefault('logging', {})['level'] = log_level
        self._setup_logging()

        self.logger = logging.getLogger(__name__)
        self.settings = Settings.from_dict(self.config)
        self.controller = CliController(self.settings)

    def _load_config(self, config_path: str) -> dict:
        """Load configuration from YAML file"""
        try:
            with open(config_path, 'r') as f:
                config = yaml.safe_load(f)
        except FileNotFoundError:
            print(f"Config file {config_path} not found, using defaults", file=sys.stderr)
            return self._default_config()
        except Exception as e:
            print(f"Error loading config: {e}", file=sys.stderr)
            sys.exit(EXIT_INVALID)
        if not isinstance(config, dict):
            print(f"Error loading config: {config_path} is not a mapping", file=sys.stderr)
            sys.exit(EXIT_INVALID)
        return config

    def _default_config(self) -> dict:
        """Return default configuration"""
        return Settings().to_dict()

    def _setup_logging(self):
        """Setup logging configuration"""
        log_config = self.config.get('logging', {})
        level = getattr(logging, str(log_config.get('level', 'WARNING')).upper())

        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )

        root_logger = logging.getLogger()
        root_logger.setLevel(level)

        # Console handler writes to stderr; stdout carries data only
        if log_config.get('console', True):
            console_handler = logging.StreamHandler()
            console_handler.setFormatter(formatter)
            root_logger.addHandler(console_handler)

        if log_config.get('file'):
            file_handler = RotatingFileHandler(
                log_config['file'],
                maxBytes=log_config.get('max_bytes', 10485760),
                backupCount=log_config.get('backup_count', 5)
            )
            file_handler.setFormatter(formatter)
            root_logger.addHandler(file_handler)

    def run(self, args) -> int:
        """Run one command"""
        self.logger.debug(f"Running {args.command}")
        return self.controller.run(args)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point"""
    try:
        args = parse_args(argv)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    toolkit = TrinomialToolkit(args.config, args.log_level)
    return toolkit.run(args)


if __name__ == "__main__":
    sys.exit(main())
