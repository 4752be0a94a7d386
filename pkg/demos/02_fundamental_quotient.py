"""Collapse an H_v-module to its fundamental quotient and push a fuzzy set down.

Run: python3 demos/02_fundamental_quotient.py
"""

from __future__ import annotations

import json

from hvlab.fundamental import build_fundamental_quotient, quotient_ivifs, verify_quotient_transfer
from hvlab.io import load_structure

for fixture in ("z2_module.json", "m2tot.json"):
    st = load_structure(fixture)
    q = build_fundamental_quotient(st.module)
    print(f"== {fixture}: {st.module.size} elements collapse to {q.size} class(es)")
    print(json.dumps(q.to_json(), ensure_ascii=False))
    for name, a in st.fuzzy.items():
        report = verify_quotient_transfer(st.module, a)
        aq = quotient_ivifs(a, q)
        print(f"  {name} -> {aq.to_json()}  [{report.status.value}{': ' + report.condition if report.condition else ''}]")
