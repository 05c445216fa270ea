"""Observed step counts against bounds from the condition length.

For the toy family the condition length C0 has a closed-form integrand; the
step count is bracketed by floor(28 C0) and ceil(316 C0).
"""

from certitrack.diagnostics import TOY_REFERENCE, bounds_report, format_bounds_table

ms = [10, 50, 100, 1000, 10000, 30000]
reports = [bounds_report(m) for m in ms]
print(format_bounds_table(reports))
print()
for r in reports:
    ref_lb, ref_steps, ref_ub, _ = TOY_REFERENCE[int(r.m)]
    print(f"m = {r.m}: reference steps {ref_steps}, ours {r.observed_steps};"
          f" UB {r.ub} vs reference {ref_ub}; bracketed: {r.bracketed}")
