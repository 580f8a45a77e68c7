"""Graded de Rham complex of F_q[x_1..x_n] and the Cartier operator.

A form is a dict {(f, I): coeff} where f is an exponent tuple and I an
increasing tuple of variable indices, standing for coeff * x^f dx_I.  Its
total degree is |f| + |I|.

Linear algebra is organised by multidegree: x^f dx_I has multidegree
g = f + 1_I, and d, the inverse Cartier map (g -> p g) and hence all of
Z, B, Z_n, B_n respect this grading.  Each degree-m slice is therefore a
direct sum of small blocks, one per g with |g| = m, and every subspace is
stored blockwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .finite_field import field
from .linalg import left_kernel, rank, rref, solve_in_span


class DegreeOverflow(ValueError):
    pass


class NotClosed(ValueError):
    pass


def compositions(m: int, n: int):
    """All n-tuples of nonnegative ints summing to m, in lexicographic order."""
    if n == 0:
        if m == 0:
            yield ()
        return
    if n == 1:
        yield (m,)
        return
    for a in range(m, -1, -1):
        for rest in compositions(m - a, n - 1):
            yield (a,) + rest


def form_degree(form) -> tuple | None:
    """(i, m) of a homogeneous nonzero form, None for the zero form."""
    degs = {(len(I), sum(f) + len(I)) for (f, I), c in form.items() if c}
    if not degs:
        return None
    if len(degs) > 1:
        raise ValueError("form is not homogeneous")
    return degs.pop()


@dataclass(frozen=True)
class FormSubspace:
    i: int
    m: int
    blocks: dict  # multidegree -> rref rows in the block basis
    space: "GradedFormSpace"

    @property
    def dim(self) -> int:
        return sum(len(r) for r in self.blocks.values())

    def forms(self):
        out = []
        for g in sorted(self.blocks):
            Is = self.space.block_basis(self.i, g)
            for row in self.blocks[g]:
                out.append({self.space.monomial_key(g, I): c for I, c in zip(Is, row) if c})
        return out

    def basis_matrix(self):
        """Rows over the global monomial basis of the ambient slice."""
        basis = self.space.basis(self.i, self.m)
        pos = {b: k for k, b in enumerate(basis)}
        rows = []
        for f in self.forms():
            r = [0] * len(basis)
            for key, c in f.items():
                r[pos[key]] = c
            rows.append(r)
        return rows

    def contains(self, form) -> bool:
        sp = self.space
        for g, vec in sp.to_blocks(form, self.i).items():
            rows = self.blocks.get(g, [])
            if solve_in_span(rows, vec, sp.F) is None:
                return False
        return True

    def __le__(self, other: "FormSubspace") -> bool:
        return all(other.contains(f) for f in self.forms())


class GradedFormSpace:
    def __init__(self, p: int, n_vars: int, max_degree: int, s: int = 1):
        self.p = p
        self.s = s
        self.q = p ** s
        self.n = n_vars
        self.M = max_degree
        self.F = field(p, s)
        self._cache = {}

    def __repr__(self):
        return f"GradedFormSpace(q={self.q}, n_vars={self.n}, M={self.M})"

    # -- bases --------------------------------------------------------------

    def dim_omega(self, i: int, m: int) -> int:
        if i < 0 or i > self.n or m < i:
            return 0
        return comb(self.n, i) * comb(m - i + self.n - 1, self.n - 1)

    def basis(self, i: int, m: int) -> list:
        key = ("basis", i, m)
        if key not in self._cache:
            out = []
            if 0 <= i <= self.n and m >= i:
                for I in combinations(range(self.n), i):
                    for f in compositions(m - i, self.n):
                        out.append((f, I))
            self._cache[key] = sorted(out)
        return self._cache[key]

    def multidegrees(self, i: int, m: int) -> list:
        if i < 0 or i > self.n or m < i:
            return []
        return [g for g in compositions(m, self.n) if sum(1 for x in g if x) >= i]

    def block_basis(self, i: int, g) -> list:
        supp = [k for k, x in enumerate(g) if x]
        return list(combinations(supp, i))

    @staticmethod
    def monomial_key(g, I):
        return tuple(x - (1 if k in I else 0) for k, x in enumerate(g)), I

    def to_blocks(self, form, i: int) -> dict:
        out = {}
        for (f, I), c in form.items():
            if not c:
                continue
            if len(I) != i:
                raise ValueError("form has the wrong degree")
            g = tuple(x + (1 if k in I else 0) for k, x in enumerate(f))
            Is = self.block_basis(i, g)
            out.setdefault(g, [0] * len(Is))[Is.index(I)] = c
        return out

    def from_block(self, i: int, g, vec) -> dict:
        return {self.monomial_key(g, I): c for I, c in zip(self.block_basis(i, g), vec) if c}

    def _check(self, m: int):
        if m > self.M:
            raise DegreeOverflow(f"degree {m} exceeds the window {self.M}")

    # -- operators on forms -----------------------------------------------------

    def exterior_derivative(self, form) -> dict:
        deg = form_degree(form)
        if deg is not None:
            self._check(deg[1])
        F = self.F
        out = {}
        for (f, I), c in form.items():
            for j in range(self.n):
                if j in I or f[j] % self.p == 0:
                    continue
                sign = (-1) ** sum(1 for k in I if k < j)
                coef = F.mul(c, F.from_int(sign * f[j]))
                key = (tuple(x - (k == j) for k, x in enumerate(f)), tuple(sorted(I + (j,))))
                v = F.add(out.get(key, 0), coef)
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return out

    def inverse_cartier(self, form) -> dict:
        """f dx_I -> f^p prod_{j in I} x_j^(p-1) dx_I, scalars raised to the p-th power."""
        deg = form_degree(form)
        if deg is not None:
            self._check(self.p * deg[1])
        p = self.p
        out = {}
        for (f, I), c in form.items():
            if c:
                g = tuple(p * x + (p - 1 if k in I else 0) for k, x in enumerate(f))
                out[(g, I)] = self.F.frob(c)
        return out

    def cartier(self, form) -> dict:
        deg = form_degree(form)
        if deg is None:
            return {}
        i, m = deg
        self._check(m)
        if self.exterior_derivative(form):
            raise NotClosed("the Cartier operator is defined on closed forms")
        out = {}
        for g, vec in self.to_blocks(form, i).items():
            h, w = self._cartier_block(i, g, vec)
            if h is not None:
                out.update(self.from_block(i, h, w))
        return out

    # -- block linear algebra ----------------------------------------------------------

    def _d_rows(self, i: int, g) -> list:
        """Images of the block basis of (i, g) in the block basis of (i+1, g)."""
        key = ("d", i, g)
        if key not in self._cache:
            rows = []
            target = self.block_basis(i + 1, g)
            for I in self.block_basis(i, g):
                img = self.exterior_derivative({self.monomial_key(g, I): 1})
                vec = [0] * len(target)
                for (f, J), c in img.items():
                    vec[target.index(J)] = c
                rows.append(vec)
            self._cache[key] = rows
        return self._cache[key]

    def _Z_block(self, i: int, g) -> list:
        key = ("Z", i, g)
        if key not in self._cache:
            rows = self._d_rows(i, g)
            n = len(self.block_basis(i, g))
            if not self.block_basis(i + 1, g):
                ker = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
            else:
                ker = left_kernel(rows, self.F)
            self._cache[key] = rref(ker, self.F)[0]
        return self._cache[key]

    def _B_block(self, i: int, g) -> list:
        key = ("B", i, g)
        if key not in self._cache:
            self._cache[key] = rref(self._d_rows(i - 1, g), self.F)[0] if i >= 1 else []
        return self._cache[key]

    def _cartier_coords(self, i: int, g, vec):
        """Solve vec = sum a_b C^{-1}(b) + beta, beta in B.  Returns (g/p, a) with
        a the linear (pre-Frobenius) coordinates, or (None, None) when p does not
        divide g.  Raises NotClosed if vec is not closed."""
        p = self.p
        B = self._B_block(i, g)
        if any(x % p for x in g):
            if solve_in_span(B, vec, self.F) is None:
                raise NotClosed("block vector is not closed")
            return None, None
        h = tuple(x // p for x in g)
        Is = self.block_basis(i, h)
        # C^{-1} of the block basis of h, as pre-Frobenius rows in block g
        inv_rows = []
        target = self.block_basis(i, g)
        for I in Is:
            img = self.inverse_cartier({self.monomial_key(h, I): 1})
            row = [0] * len(target)
            for (f, J), c in img.items():
                row[target.index(J)] = c
            inv_rows.append(row)
        sol = solve_in_span(inv_rows + B, vec, self.F)
        if sol is None:
            raise NotClosed("block vector is not closed")
        return h, sol[: len(Is)]

    def _cartier_block(self, i: int, g, vec):
        h, a = self._cartier_coords(i, g, vec)
        if h is None:
            return None, None
        return h, [self.F.frob_inv(x) for x in a]

    # -- subspaces ------------------------------------------------------------------------

    def _subspace(self, i, m, blocks) -> FormSubspace:
        return FormSubspace(i, m, {g: r for g, r in blocks.items() if r}, self)

    def Z_space(self, i: int, m: int) -> FormSubspace:
        self._check(m)
        return self._subspace(i, m, {g: self._Z_block(i, g) for g in self.multidegrees(i, m)})

    def B_space(self, i: int, m: int) -> FormSubspace:
        self._check(m)
        return self._subspace(i, m, {g: self._B_block(i, g) for g in self.multidegrees(i, m)})

    def omega_space(self, i: int, m: int) -> FormSubspace:
        self._check(m)
        blocks = {}
        for g in self.multidegrees(i, m):
            k = len(self.block_basis(i, g))
            blocks[g] = [[1 if a == b else 0 for b in range(k)] for a in range(k)]
        return self._subspace(i, m, blocks)

    def _Zn_block(self, i: int, g, n: int) -> list:
        key = ("Zn", i, g, n)
        if key in self._cache:
            return self._cache[key]
        Z = self._Z_block(i, g)
        if n == 1 or any(x % self.p for x in g):
            out = Z
        else:
            F = self.F
            h = tuple(x // self.p for x in g)
            W = self._Zn_block(i, h, n - 1)
            # C(z) in W  <=>  linear coordinates a(z) lie in sigma(W)
            images = [self._cartier_coords(i, g, z)[1] for z in Z]
            sigW = [[F.frob(x) for x in w] for w in W]
            ker = left_kernel(images + sigW, F)
            combos = [k[: len(Z)] for k in ker]
            out = rref([_combine(F, c, Z) for c in combos], F)[0] if combos else []
        self._cache[key] = out
        return out

    def Z_n_space(self, i: int, m: int, n: int) -> FormSubspace:
        self._check(m)
        if n < 1:
            raise ValueError("level n must be >= 1")
        return self._subspace(i, m, {g: self._Zn_block(i, g, n) for g in self.multidegrees(i, m)})

    def _Cn_vector(self, i: int, g, vec, n: int):
        """C^n of a block vector; returns (multidegree, vector) or (None, None) for zero."""
        for _ in range(n):
            g, vec = self._cartier_block(i, g, vec)
            if g is None:
                return None, None
        return g, vec

    def _Bn_block(self, i: int, g, n: int) -> list:
        key = ("Bn", i, g, n)
        if key in self._cache:
            return self._cache[key]
        F = self.F
        Zn = self._Zn_block(i, g, n)
        if any(x % (self.p ** n) for x in g):
            out = Zn
        else:
            images = [self._Cn_vector(i, g, z, n)[1] for z in Zn]
            ker = left_kernel(images, F) if images else []
            # C^n is sigma^(-n)-semilinear, so kernel coefficients are twisted back
            combos = [[F.frob(x, n) for x in k] for k in ker]
            out = rref([_combine(F, c, Zn) for c in combos], F)[0] if combos else []
        self._cache[key] = out
        return out

    def B_n_space(self, i: int, m: int, n: int) -> FormSubspace:
        self._check(m)
        if n < 1:
            raise ValueError("level n must be >= 1")
        return self._subspace(i, m, {g: self._Bn_block(i, g, n) for g in self.multidegrees(i, m)})

    def cartier_image(self, sub: FormSubspace, times: int = 1):
        """(dim of kernel, image subspace) of C^times restricted to sub."""
        F = self.F
        m2 = sub.m
        for _ in range(times):
            m2 = m2 // self.p if m2 % self.p == 0 else None
            if m2 is None:
                break
        blocks = {}
        img_rank = 0
        for g, rows in sub.blocks.items():
            imgs = {}
            for z in rows:
                h, w = self._Cn_vector(sub.i, g, z, times)
                if h is not None:
                    imgs.setdefault(h, []).append(w)
            for h, ws in imgs.items():
                red = rref(ws, F)[0]
                img_rank += len(red)
                blocks[h] = red
        kernel_dim = sub.dim - img_rank
        image = self._subspace(sub.i, m2, blocks) if m2 is not None else None
        return kernel_dim, image

    # -- full-slice view (used as an independent check) ------------------------------------

    def slice_d_rank(self, i: int, m: int) -> int:
        """Rank of d: Omega^i_m -> Omega^{i+1}_m computed on the whole slice."""
        src = self.basis(i, m)
        tgt = self.basis(i + 1, m)
        pos = {b: k for k, b in enumerate(tgt)}
        rows = []
        for b in src:
            img = self.exterior_derivative({b: 1})
            r = [0] * len(tgt)
            for key, c in img.items():
                r[pos[key]] = c
            rows.append(r)
        return rank(rows, self.F) if rows and tgt else 0

    # -- exactness report -------------------------------------------------------------------

    def verify_sequences(self, i_max: int, m_max: int, n_max: int) -> "SequenceReport":
        if m_max > self.M:
            raise DegreeOverflow(f"window {m_max} exceeds {self.M}")
        i_max = min(i_max, self.n)
        p = self.p
        checks = {}
        rows = []

        def record(name, ok, where):
            c = checks.setdefault(name, [0, 0, []])
            c[0] += 1
            if not ok:
                c[1] += 1
                c[2].append(where)

        def lower(m, k):
            return m // p ** k if m % p ** k == 0 else None

        def om(i, m):
            return self.dim_omega(i, m) if m is not None else 0

        for i in range(i_max + 1):
            for m in range(m_max + 1):
                if self.dim_omega(i, m) == 0:
                    continue
                Z = self.Z_space(i, m)
                B = self.B_space(i, m)
                B_next = self.B_space(i + 1, m) if i < self.n else None
                dimBn = B_next.dim if B_next else 0
                record("omega=Z+dB", self.dim_omega(i, m) == Z.dim + dimBn, (i, m))
                record("Z-B=omega(m/p)", Z.dim - B.dim == om(i, lower(m, 1)), (i, m))
                if i == 0:
                    record("ker d on functions = p-th powers", Z.dim == om(0, lower(m, 1)), (i, m))
                    record("omega0 = omega0(m/p) + B1", self.dim_omega(0, m) == om(0, lower(m, 1)) + dimBn, (i, m))
                kerC, _ = self.cartier_image(B)
                record("C(B)=0", kerC == B.dim, (i, m))
                if lower(m, 1) is not None:
                    h = lower(m, 1)
                    ok = all(
                        self.cartier(self.inverse_cartier({b: 1})) == {b: 1} for b in self.basis(i, h)
                    )
                    record("C(inverse C)=id", ok, (i, m))
                for n in range(1, n_max + 1):
                    Zn = self.Z_n_space(i, m, n)
                    Bn = self.B_n_space(i, m, n)
                    Zn1 = self.Z_n_space(i, m, n + 1)
                    Bn1 = self.B_n_space(i, m, n + 1)
                    rows.append((i, m, n, self.dim_omega(i, m), Z.dim, B.dim, Zn.dim, Bn.dim))
                    record("B_n <= Z_n", Bn <= Zn, (i, m, n))
                    record("Z_{n+1} <= Z_n", Zn1 <= Zn, (i, m, n))
                    record("B_n <= B_{n+1}", Bn <= Bn1, (i, m, n))
                    record("Z_n = B_n + omega(m/p^n)", Zn.dim == Bn.dim + om(i, lower(m, n)), (i, m, n))
                    kz, imz = self.cartier_image(Zn1)
                    record("ker(C: Z_{n+1} -> Z_n) = B", kz == B.dim, (i, m, n))
                    if lower(m, 1) is not None:
                        tgt = self.Z_n_space(i, lower(m, 1), n)
                        imdim = imz.dim if imz else 0
                        record("C: Z_{n+1} -> Z_n onto", imdim == tgt.dim, (i, m, n))
                    kb, imb = self.cartier_image(Bn1)
                    record("ker(C: B_{n+1} -> B_n) = B", kb == B.dim, (i, m, n))
                    if lower(m, 1) is not None:
                        tgt = self.B_n_space(i, lower(m, 1), n)
                        imdim = imb.dim if imb else 0
                        record("C: B_{n+1} -> B_n onto", imdim == tgt.dim, (i, m, n))
                    kc, imc = self.cartier_image(Zn, n)
                    record("C_n: Z_n -> omega onto", (imc.dim if imc else 0) == om(i, lower(m, n)), (i, m, n))
        return SequenceReport(self, (i_max, m_max, n_max), checks, rows)


def _combine(F, coeffs, rows):
    out = [0] * len(rows[0])
    for c, r in zip(coeffs, rows):
        if c:
            out = [F.add(x, F.mul(c, y)) for x, y in zip(out, r)]
    return out


@dataclass
class SequenceReport:
    space: GradedFormSpace
    window: tuple
    checks: dict  # name -> [count, failures, failing locations]
    table: list  # (i, m, n, dim omega, dim Z, dim B, dim Z_n, dim B_n)

    @property
    def ok(self) -> bool:
        return all(c[1] == 0 for c in self.checks.values())

    def failures(self) -> int:
        return sum(c[1] for c in self.checks.values())
