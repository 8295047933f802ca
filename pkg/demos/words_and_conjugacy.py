"""Words in S and T: round trips, abelianization, conjugacy witnesses."""

import random

from fourfold import (
    B,
    GeneratorWord,
    S,
    abelianization_class,
    are_conjugate,
    commutator_decomposition,
    is_in_derived_subgroup,
    matrix_to_word,
    word_to_matrix,
)

rng = random.Random(7)


def random_word(max_len: int) -> GeneratorWord:
    letters = []
    for _ in range(rng.randrange(max_len + 1)):
        letters.append((rng.choice("ST"), rng.choice((-3, -2, -1, 1, 2, 3))))
    return GeneratorWord.of(letters)


print("== word problem round trips ==")
for text in ("T", "S T^-1 S", "T^3 S T^-1", "S T S T S T"):
    w = GeneratorWord.parse(text)
    m = word_to_matrix(w)
    back = matrix_to_word(m)
    print(f"{text!r:20} -> {m}  -> {back}")
    assert word_to_matrix(back) == m

for _ in range(200):
    m = word_to_matrix(random_word(12))
    assert word_to_matrix(matrix_to_word(m)) == m
print("200 random matrices recovered from their rebuilt words")

print()
print("== abelianization, a cyclic group of order 12 ==")
for k in range(1, 7):
    cls = abelianization_class(B ** k)
    print(f"B^{k}: class {cls}, additive order {cls.additive_order}")
assert int(abelianization_class(B ** 12)) == 0
assert is_in_derived_subgroup(B ** 12)

cert = commutator_decomposition(B ** 12)
assert cert.verify()
print(f"B^12 is a product of {len(cert.pairs)} commutators (certificate checks out)")

print()
print("== conjugacy with witnesses ==")
m = word_to_matrix(GeneratorWord.parse("T^2 S T^-1"))
for g_text in ("S", "T^3", "S T S"):
    g = word_to_matrix(GeneratorWord.parse(g_text))
    other = g * m * g.inverse()
    res = are_conjugate(m, other)
    assert res.conjugate
    w = res.witness
    assert w * m * w.inverse() == other
    print(f"{m} ~ {other}  via witness {w}")

res = are_conjugate(B, B ** 2)
print(f"B conjugate to B^2? {res.conjugate}")
assert not res.conjugate  # different traces
res = are_conjugate(B, B.inverse())
print(f"B conjugate to B^-1? {res.conjugate}")
assert not res.conjugate  # same trace, different classes
