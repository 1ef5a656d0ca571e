import pytest

from klrkit.quiver_ar import DynkinQuiver, build_phi, default_height
from klrkit.root_system import build_root_system


def make_phi(type_tag, rank, arrows=None):
    rs = build_root_system(type_tag, rank)
    q = DynkinQuiver.parse(rs, arrows) if arrows else DynkinQuiver.default(rs)
    return build_phi(q, default_height(q))


@pytest.fixture
def phi_table():
    return make_phi


def pytest_terminal_summary(terminalreporter, config):
    from test_acceptance import VERDICTS_KEY

    verdicts = config.stash.get(VERDICTS_KEY, None)
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(verdicts):
        terminalreporter.write_line(verdicts[number])
