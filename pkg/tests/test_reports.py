import json

import pytest

from nql.cli import certify_prime, compute_matrix, compute_witness, sweep
from nql.criterion import nondegenerate
from nql.groups import make_group
from nql.monomials import eigen_action_with_multiplicities, regular_eigen_action, regular_perm_action
from nql.reports import PAYLOADS, RunReport, decode, encode
from nql.witnesses import lemma2_counts


def _payloads():
    yield "matrix", compute_matrix(make_group([3]))
    yield "matrix", compute_matrix(make_group([2, 2]))
    yield "verdict", nondegenerate(regular_perm_action(make_group([4])))
    yield "verdict", nondegenerate(regular_perm_action(make_group([6])), method="columns")
    yield "verdict", nondegenerate(regular_eigen_action(make_group([5])))
    yield "verdict", nondegenerate(regular_eigen_action(make_group([6])))
    yield "verdict", nondegenerate(eigen_action_with_multiplicities(make_group([3]), [2, 1, 0]))
    yield "witness", compute_witness(make_group([2, 2, 2]))
    yield "certificates", certify_prime(5)
    yield "lemma2", lemma2_counts(3, 0b110)
    yield "sweep", sweep(6)


@pytest.mark.parametrize("kind, obj", list(_payloads()), ids=lambda x: x if isinstance(x, str) else "")
def test_round_trip(kind, obj):
    assert kind in PAYLOADS
    text = json.dumps(encode(obj))
    assert decode(kind, json.loads(text)) == obj
    rep = RunReport(["x"], kind, encode(obj), "g", "regular-eigen", 0.5)
    again = RunReport.from_json(rep.to_json())
    assert again == rep and again.decoded() == obj


def test_report_fields():
    rep = RunReport(["check", "--group", "5"], "lemma2", encode(lemma2_counts(1, 1)))
    d = json.loads(rep.to_json())
    assert set(d) == {"tool", "version", "command", "group", "representation", "payload_type", "payload", "duration_s"}
    assert d["tool"] == "nql"
