import pytest

from core.kl_table import KLTable
from services.kazhdan_lusztig_service import KazhdanLusztigService
from services.khovanov_kuperberg_service import KhovanovKuperbergService
from services.skein_reduction_service import SYMMETRIC, SkeinReductionService
from services.web_action_service import WebActionService


@pytest.fixture(scope="session")
def kl_service() -> KazhdanLusztigService:
    return KazhdanLusztigService(threads=1)


@pytest.fixture(scope="session")
def kl_table_3(kl_service) -> KLTable:
    return kl_service.compute_kl_table(3)


@pytest.fixture(scope="session")
def kl_table_4(kl_service) -> KLTable:
    return kl_service.compute_kl_table(4)


@pytest.fixture(scope="session")
def kk() -> KhovanovKuperbergService:
    return KhovanovKuperbergService()


@pytest.fixture(scope="session")
def skein() -> SkeinReductionService:
    return SkeinReductionService(SYMMETRIC)


@pytest.fixture(scope="session")
def actions(skein, kk) -> WebActionService:
    return WebActionService(skein, kk)
