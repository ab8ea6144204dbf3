"""Wall-clock cost of the serial vs. parallel transform on liquid- and
solid-state hardware.

Run:  python3 demos/02_time_costs.py
"""

from spinqft import costmodel

# ── 1) Liquid-state sweep at the chloroform coupling ────────────────────

liquid = costmodel.LiquidParams(delta=10e-6, J=215.0)
print(f"liquid-state constants: delta = {liquid.delta * 1e6:.0f} us, "
      f"J = {liquid.J:.0f} Hz, kappa = pi/J = {liquid.kappa * 1e3:.2f} ms\n")

print(f"{'n':>3} {'serial (ms)':>12} {'parallel (ms)':>14} {'ratio':>7}")
for n in range(1, 11):
    ser = costmodel.t_serial_liquid(n, liquid)
    par = costmodel.t_parallel(n, liquid)
    print(f"{n:>3} {ser.total * 1e3:>12.3f} {par.total * 1e3:>14.3f} "
          f"{ser.coupling_term / par.coupling_term:>7.4f}")

# Both models are linear in n; the coupling-term ratio climbs toward 2
# like 2 - 2/n, so the factor-of-two advantage is an asymptotic statement:
for n in (10, 40, 100, 400):
    r = (costmodel.t_serial_liquid(n, liquid).coupling_term
         / costmodel.t_parallel(n, liquid).coupling_term)
    print(f"ratio at n={n:>4}: {r:.4f}")

# ── 2) Solid-state serial cost with SWAP overhead ───────────────────────

# Paired electron/nuclear logical qubits pay 2*n*Delta of SWAP time on
# top of the pulse and coupling terms, with kappa = pi/d.
solid = costmodel.SolidParams(delta=10e-9, d=20e6, Delta=100e-9)
print(f"\nsolid-state constants: delta = {solid.delta * 1e9:.0f} ns, "
      f"d = {solid.d / 1e6:.0f} MHz, Delta = {solid.Delta * 1e9:.0f} ns")
print(f"{'n':>3} {'pulse (us)':>11} {'coupling (us)':>14} {'swap (us)':>10} {'total (us)':>11}")
for n in (2, 4, 8, 16):
    row = costmodel.t_serial_solid(n, solid)
    print(f"{n:>3} {row.pulse_term * 1e6:>11.3f} {row.coupling_term * 1e6:>14.3f} "
          f"{row.swap_term * 1e6:>10.3f} {row.total * 1e6:>11.3f}")

# The microsecond solid-state totals against millisecond liquid-state ones
# are the point: faster gates buy more operations inside the coherence time.

# ── 3) CSV export (same table the CLI writes) ───────────────────────────

rows = costmodel.sweep("parallel", liquid, range(1, 6))
print("\n" + costmodel.sweep_to_csv(rows))
