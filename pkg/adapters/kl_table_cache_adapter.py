"""KL table cache adapter storing tables as numpy ``.npz`` archives."""
import logging
from pathlib import Path
from typing import Final, Optional

import numpy as np

from core.config import config
from core.errors import ParseError
from core.kl_table import KLTable
from core.permutation import Permutation
from services.kl_validation_service import KLValidationService

KL_CACHE_FORMAT_VERSION: Final[int] = 1


class KLTableCacheAdapter:
    """Adapter reading and writing validated KL tables under the cache directory."""

    def __init__(self, cache_dir: Optional[Path] = None) -> None:
        """Initialize the cache adapter.

        Args:
            cache_dir: Directory holding ``kl_S<n>.npz`` files.
        """
        self._logger = logging.getLogger(self.__class__.__name__)
        self._cache_dir: Final[Path] = cache_dir or config.cache_dir

    def path_for(self, n: int) -> Path:
        return self._cache_dir / f"kl_S{n}.npz"

    def save(self, table: KLTable) -> Path:
        """Write a table; polynomial rows are stored flat with their widths."""
        self._cache_dir.mkdir(parents=True, exist_ok=True)
        path = self.path_for(table.n)
        polynomials = [table.poly_array(k) for k in range(table.size)]
        np.savez_compressed(
            path,
            format_version=np.array(KL_CACHE_FORMAT_VERSION),
            n=np.array(table.n),
            elements=np.array([w.one_line for w in table.elements], dtype=np.int64),
            mu=table.mu_matrix(),
            widths=np.array([array.shape[1] for array in polynomials], dtype=np.int64),
            polynomials=np.concatenate([array.ravel() for array in polynomials]),
        )
        self._logger.info(f"💾 Cached KL table for S_{table.n} at {path}")
        return path

    def load(self, n: int) -> Optional[KLTable]:
        """Read and re-validate a cached table, or None when absent.

        Raises:
            ParseError: On a foreign format version or a mismatched n.
            VerificationError: If the cached table fails validation.
        """
        path = self.path_for(n)
        if not path.exists():
            self._logger.debug(f"No cached KL table at {path}")
            return None
        with np.load(path) as archive:
            version = int(archive["format_version"])
            if version != KL_CACHE_FORMAT_VERSION:
                self._logger.error(f"Unsupported KL cache version {version} in {path}")
                raise ParseError(f"unsupported KL cache format version {version}")
            if int(archive["n"]) != n:
                raise ParseError(f"{path} holds S_{int(archive['n'])}, expected S_{n}")
            elements = [Permutation(row.tolist()) for row in archive["elements"]]
            mu_matrix = archive["mu"]
            flat = archive["polynomials"]
            widths = archive["widths"]
        size = len(elements)
        polynomials = []
        offset = 0
        for width in widths.tolist():
            polynomials.append(flat[offset:offset + size * width].reshape(size, width))
            offset += size * width
        table = KLTable(n, elements, polynomials, mu_matrix)
        KLValidationService().validate(table)
        self._logger.info(f"📂 Loaded KL table for S_{n} from {path}")
        return table
