import hashlib
import os
from pathlib import Path

import pytest

import nlzeros
from nlzeros import enumeration as E
from nlzeros.poly import LITTLEWOOD, NEWMAN

NEWMAN_MAX = int(os.environ.get("NLZEROS_NEWMAN_MAX", "22"))
LITTLEWOOD_MAX = int(os.environ.get("NLZEROS_LITTLEWOOD_MAX", "19"))


def _source_key() -> str:
    # archives depend only on the counting code; rescan when it changes
    root = Path(nlzeros.__file__).parent
    h = hashlib.sha256()
    for name in ("_kernels.py", "diskcount.py", "enumeration.py", "poly.py"):
        h.update((root / name).read_bytes())
    return h.hexdigest()[:16]


@pytest.fixture(scope="session")
def scan_dir(request):
    base = os.environ.get("NLZEROS_SCAN_CACHE")
    if base:
        d = Path(base) / _source_key()
    else:
        d = Path(request.config.cache.mkdir("nlzeros_scans")) / _source_key()
    d.mkdir(parents=True, exist_ok=True)
    return d


def _ensure(scan_dir, cls, nmax):
    arcs = {}
    tag = E.class_tag(cls)
    for n in range(1, nmax + 1):
        path = scan_dir / E.archive_name(tag, n)
        if path.exists():
            arcs[n] = E.ScanArchive.read(path)
        else:
            N, U, _ = E.scan_records(tag, n)
            arc = E.ScanArchive(tag, n, N, U)
            arc.write(path)
            arcs[n] = arc
    return arcs


@pytest.fixture(scope="session")
def newman_archives(scan_dir):
    return _ensure(scan_dir, NEWMAN, NEWMAN_MAX)


@pytest.fixture(scope="session")
def littlewood_archives(scan_dir):
    return _ensure(scan_dir, LITTLEWOOD, LITTLEWOOD_MAX)


ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """Context manager recording one PASS/FAIL line per acceptance criterion."""
    import contextlib

    results = request.config.stash.setdefault(ACCEPTANCE, {})

    @contextlib.contextmanager
    def run(num, desc):
        try:
            yield
        except BaseException:
            results[num] = f"FAIL criterion {num}: {desc}"
            print(results[num])
            raise
        results[num] = f"PASS criterion {num}: {desc}"
        print(results[num])

    return run


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(ACCEPTANCE, {})
    if results:
        terminalreporter.section("acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num])
