"""Main entry point for the sl3web toolkit."""
import logging

from core.logging_config import setup_logging
from interfaces.cli_interface import cli as cli_entrypoint


def run() -> None:
    """Run the sl3web command line."""
    setup_logging()
    logging.getLogger(__name__).info("Initializing sl3web command line...")
    cli_entrypoint()  # pylint: disable=no-value-for-parameter


if __name__ == "__main__":
    run()
