"""Build an AIG by hand, round-trip it through the ASCII format, and
inspect the built-in designs."""

from aigopt import AigBuilder, compute_stats, emit_aiger, parse_aiger
from aigopt.fixtures import FIXTURE_NAMES, load_fixture

# full adder: sum = a ^ b ^ cin, carry = majority(a, b, cin)
b = AigBuilder(num_pis=3)
a, x, cin = (b.pi_lit(i) for i in range(3))
s = b.xor_(b.xor_(a, x), cin)
carry = b.or_(b.and_(a, x), b.and_(cin, b.xor_(a, x)))
b.add_po(s)
b.add_po(carry)
adder = b.build(name="full_adder")

text = emit_aiger(adder)
print(text)
again = parse_aiger(text)
assert again.canonical_hash() == adder.canonical_hash()

for name in FIXTURE_NAMES:
    aig = load_fixture(name)
    st = compute_stats(aig)
    print("%-10s %4d and-gates, %d pis, %d pos, level %d"
          % (name, st.node_count, aig.num_pis, aig.num_pos, st.level))
