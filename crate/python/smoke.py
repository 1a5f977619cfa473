"""Smoke test for the Python bindings.

Build and install first:
    pip install -e crates/py --no-build-isolation
"""

import json
import math

import chirality

names = {name: (plus, minus) for name, plus, minus in chirality.named_pairs()}

haagerup = chirality.GraphPair(*names["Haagerup"])
prof = haagerup.profile()
index = float(prof["profile"]["index"])
assert abs(index - (5 + math.sqrt(13)) / 2) < 1e-12, index
assert haagerup.obstruct()["overall"] == "survives"

q3 = chirality.GraphPair(*names["Q3"])
assert q3.obstruct()["overall"] == "eliminated"

try:
    chirality.GraphPair("not a graph")
except ValueError:
    pass
else:
    raise AssertionError("bad graph string accepted")

w = chirality.Weed.builtin("w")
out = w.eliminate()
assert out["verdict"] == "eliminated", out["verdict"]
cert = json.dumps(out["certificate"])
print("W:", chirality.verify_certificate(cert))

tampered = out["certificate"]
tampered["f"]["num"][0][2] = "-" + tampered["f"]["num"][0][2]
try:
    chirality.verify_certificate(json.dumps(tampered))
except ValueError as e:
    print("tampered certificate rejected:", e)
else:
    raise AssertionError("tampered certificate accepted")

print("ok")
