"""File utilities for reading and writing versioned text files."""
import logging
from pathlib import Path

from core.errors import ParseError
from core.web import WEB_FORMAT_HEADER, Web


class FileUtils:
    """Utility class for text file operations."""

    def __init__(self) -> None:
        """Initialize the file utilities."""
        self.__logger = logging.getLogger(self.__class__.__name__)

    def read_text(self, file_path: Path) -> str:
        """Load text from file.

        Args:
            file_path: Path to the file.

        Returns:
            Content of the file.

        Raises:
            FileNotFoundError: If the file doesn't exist.
            Exception: If file reading fails.
        """
        if not file_path.exists():
            self.__logger.error(f"File does not exist: {file_path}")
            raise FileNotFoundError(f"File does not exist: {file_path}")
        try:
            return file_path.read_text(encoding="utf-8")
        except Exception as exception:
            self.__logger.error(f"Failed to read file {file_path}: {exception}")
            raise

    def write_text(self, file_path: Path, text: str) -> Path:
        try:
            file_path.parent.mkdir(parents=True, exist_ok=True)
            file_path.write_text(text, encoding="utf-8")
        except OSError as exception:
            self.__logger.error(f"Failed to write file {file_path}: {exception}")
            raise
        self.__logger.debug(f"Wrote {len(text)} characters to {file_path}")
        return file_path

    def read_web(self, file_path: Path) -> Web:
        """Parse a web file.

        Raises:
            ParseError: If the header or the body is malformed.
            WebStructureError: If the described graph is not a web.
        """
        text = self.read_text(file_path)
        if not text.startswith(WEB_FORMAT_HEADER):
            self.__logger.error(f"{file_path} does not start with {WEB_FORMAT_HEADER!r}")
            raise ParseError(f"{file_path} is not a web file")
        return Web.parse(text)

    def write_web(self, file_path: Path, web: Web) -> Path:
        return self.write_text(file_path, web.to_text())
