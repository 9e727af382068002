import json

import pytest

from resint.certificate import Certificate
from resint.corpus import MAPS
from resint.dynmap.rmap import RationalMap
from resint.obstruction import analyze


@pytest.fixture(scope="module")
def cert():
    v = analyze(RationalMap.parse(MAPS["planar_cubic"]))
    assert v.excluded
    return v.certificate


def test_replay_is_clean(cert):
    assert cert.replay() == []


def test_replay_after_serialization_round_trip(cert):
    items = json.loads(json.dumps(cert.to_list()))
    again = Certificate.from_list(items)
    assert again.names() == cert.names()
    assert again.replay() == []


def test_tampered_entry_is_flagged(cert):
    items = cert.to_list()
    i = next(k for k, it in enumerate(items) if it["name"] == "Res(U_sel,V_7)")
    items[i] = dict(items[i], value="1")
    assert Certificate.from_list(items).replay() == ["Res(U_sel,V_7)"]


def test_tampered_input_is_flagged(cert):
    bad = cert.replay(inputs={"S1": cert.get("S1") + 1})
    assert "S1" in bad


def test_unknown_operation_raises():
    c = Certificate()
    c.add("z", "mystery", (), 1)
    with pytest.raises(ValueError):
        c.replay()
