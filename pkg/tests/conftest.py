import json
from pathlib import Path

import pytest

from dockslice import levels, pipeline

FIXTURE_DIR = Path(__file__).parent / "fixtures" / "pdb"
GOLDEN_DIR = Path(__file__).parent / "goldens"

ENTRY_CODES = [
    "1acb", "1atn", "1avx", "1buh", "1bvn",
    "1emv", "1fss", "1grn", "2ptc", "4kc3",
]


def fixture_path(code: str) -> Path:
    return FIXTURE_DIR / f"{code}.pdb"


def fixture_text(code: str) -> str:
    return fixture_path(code).read_text()


def load_golden(name: str) -> dict:
    return json.loads((GOLDEN_DIR / name).read_text())


@pytest.fixture(scope="session")
def config() -> pipeline.PipelineConfig:
    return pipeline.default_config()


@pytest.fixture(scope="session")
def built(tmp_path_factory, config):
    """Ingest + build all fixtures once per test session."""
    out = tmp_path_factory.mktemp("assets")
    cache = out / "cache"
    result = pipeline.ingest(sorted(FIXTURE_DIR.glob("*.pdb")), cache)
    assert not result.failures, result.failures
    build = pipeline.build(config, cache, out_dir=out / "assets")
    assert not build.skipped, build.skipped
    return build


@pytest.fixture(scope="session")
def pack(built) -> levels.LevelPack:
    return built.pack


def pytest_runtest_logreport(report):
    # One visible pass/fail line per acceptance criterion.
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        print(f"\n[ACCEPTANCE] {name}: {'PASS' if report.passed else 'FAIL'}")
