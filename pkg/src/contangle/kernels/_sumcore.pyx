# cython: language_level=3
"""MPFR implementation of the alternating-sum kernels.

Mirrors :mod:`contangle.kernels.pure` exactly, including the calling
convention ``(value, mantissa, exp2, max_exp2, any_term)``.  Binomial
coefficients are carried as exact GMP integers; everything else is
correctly rounded MPFR arithmetic at the requested working precision.
"""

cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct mpz_t[1]
    void mpz_init_set_ui(mpz_t rop, unsigned long op)
    void mpz_clear(mpz_t x)
    void mpz_mul_ui(mpz_t rop, mpz_t op1, unsigned long op2)
    void mpz_divexact_ui(mpz_t q, mpz_t n, unsigned long d)

cdef extern from "mpfr.h":
    ctypedef struct __mpfr_struct:
        pass
    ctypedef __mpfr_struct mpfr_t[1]
    ctypedef long mpfr_prec_t
    ctypedef long mpfr_exp_t
    ctypedef enum mpfr_rnd_t:
        MPFR_RNDN
    void mpfr_init2(mpfr_t x, mpfr_prec_t prec)
    void mpfr_clear(mpfr_t x)
    int mpfr_set_d(mpfr_t rop, double op, mpfr_rnd_t rnd)
    int mpfr_set_ui(mpfr_t rop, unsigned long op, mpfr_rnd_t rnd)
    int mpfr_add(mpfr_t rop, mpfr_t op1, mpfr_t op2, mpfr_rnd_t rnd)
    int mpfr_sub(mpfr_t rop, mpfr_t op1, mpfr_t op2, mpfr_rnd_t rnd)
    int mpfr_mul(mpfr_t rop, mpfr_t op1, mpfr_t op2, mpfr_rnd_t rnd)
    int mpfr_div(mpfr_t rop, mpfr_t op1, mpfr_t op2, mpfr_rnd_t rnd)
    int mpfr_add_ui(mpfr_t rop, mpfr_t op1, unsigned long op2, mpfr_rnd_t rnd)
    int mpfr_mul_ui(mpfr_t rop, mpfr_t op1, unsigned long op2, mpfr_rnd_t rnd)
    int mpfr_div_ui(mpfr_t rop, mpfr_t op1, unsigned long op2, mpfr_rnd_t rnd)
    int mpfr_ui_div(mpfr_t rop, unsigned long op1, mpfr_t op2, mpfr_rnd_t rnd)
    int mpfr_ui_pow(mpfr_t rop, unsigned long op1, mpfr_t op2, mpfr_rnd_t rnd)
    int mpfr_mul_z(mpfr_t rop, mpfr_t op1, mpz_t op2, mpfr_rnd_t rnd)
    int mpfr_sqr(mpfr_t rop, mpfr_t op, mpfr_rnd_t rnd)
    int mpfr_sqrt(mpfr_t rop, mpfr_t op, mpfr_rnd_t rnd)
    int mpfr_exp(mpfr_t rop, mpfr_t op, mpfr_rnd_t rnd)
    int mpfr_sinh(mpfr_t rop, mpfr_t op, mpfr_rnd_t rnd)
    int mpfr_asinh(mpfr_t rop, mpfr_t op, mpfr_rnd_t rnd)
    double mpfr_get_d(mpfr_t op, mpfr_rnd_t rnd)
    double mpfr_get_d_2exp(long *exp, mpfr_t op, mpfr_rnd_t rnd)
    mpfr_exp_t mpfr_get_exp(mpfr_t x)
    int mpfr_zero_p(mpfr_t op)


def eval_residual(long n_kept, long n_traced, double r_bar, long prec):
    """One pass of the alternating binomial contangle sum at ``prec`` bits."""
    if n_kept < 2 or n_traced < 0 or prec < 2:
        raise ValueError("invalid kernel arguments")
    cdef mpfr_t r, s, e4, scale, den, term, acc
    cdef mpz_t binom
    cdef long j, exp2, max_exp2
    cdef bint any_term = False
    cdef double value, mantissa

    mpfr_init2(r, prec)
    mpfr_init2(s, prec)
    mpfr_init2(e4, prec)
    mpfr_init2(scale, prec)
    mpfr_init2(den, prec)
    mpfr_init2(term, prec)
    mpfr_init2(acc, prec)
    mpz_init_set_ui(binom, 1)
    try:
        mpfr_set_d(r, r_bar, MPFR_RNDN)
        mpfr_mul_ui(s, r, 2, MPFR_RNDN)
        mpfr_sinh(s, s, MPFR_RNDN)
        if mpfr_zero_p(s):
            return (0.0, 0.0, 0, 0, False)
        mpfr_mul_ui(e4, r, 4, MPFR_RNDN)
        mpfr_exp(e4, e4, MPFR_RNDN)
        mpfr_sqr(scale, s, MPFR_RNDN)
        mpfr_mul_ui(scale, scale, 4, MPFR_RNDN)
        mpfr_div_ui(scale, scale, n_kept + n_traced, MPFR_RNDN)
        mpfr_set_ui(acc, 0, MPFR_RNDN)
        max_exp2 = 0
        for j in range(n_kept - 1):
            mpfr_mul_ui(den, e4, j + n_traced, MPFR_RNDN)
            mpfr_add_ui(den, den, n_kept - j, MPFR_RNDN)
            mpfr_mul_ui(term, scale, n_kept - 1 - j, MPFR_RNDN)
            mpfr_div(term, term, den, MPFR_RNDN)
            mpfr_sqrt(term, term, MPFR_RNDN)
            mpfr_asinh(term, term, MPFR_RNDN)
            mpfr_sqr(term, term, MPFR_RNDN)
            mpfr_mul_z(term, term, binom, MPFR_RNDN)
            if not mpfr_zero_p(term):
                if not any_term or mpfr_get_exp(term) > max_exp2:
                    max_exp2 = mpfr_get_exp(term)
                any_term = True
            if j % 2 == 0:
                mpfr_add(acc, acc, term, MPFR_RNDN)
            else:
                mpfr_sub(acc, acc, term, MPFR_RNDN)
            if j < n_kept - 2:
                mpz_mul_ui(binom, binom, n_kept - 1 - j)
                mpz_divexact_ui(binom, binom, j + 1)
        if not any_term:
            return (0.0, 0.0, 0, 0, False)
        value = mpfr_get_d(acc, MPFR_RNDN)
        mantissa = mpfr_get_d_2exp(&exp2, acc, MPFR_RNDN)
        return (value, mantissa, exp2, max_exp2, True)
    finally:
        mpfr_clear(r)
        mpfr_clear(s)
        mpfr_clear(e4)
        mpfr_clear(scale)
        mpfr_clear(den)
        mpfr_clear(term)
        mpfr_clear(acc)
        mpz_clear(binom)


def eval_comparison(long n_parties, double a, double b, double c, long prec):
    """One pass of the alternating comparison-sequence sum at ``prec`` bits."""
    if n_parties < 2 or prec < 2:
        raise ValueError("invalid kernel arguments")
    cdef mpfr_t aa, bb, cc, den, term, acc
    cdef mpz_t binom
    cdef long j, n1, exp2, max_exp2
    cdef bint any_term = False
    cdef double value, mantissa

    n1 = n_parties - 1
    mpfr_init2(aa, prec)
    mpfr_init2(bb, prec)
    mpfr_init2(cc, prec)
    mpfr_init2(den, prec)
    mpfr_init2(term, prec)
    mpfr_init2(acc, prec)
    mpz_init_set_ui(binom, 1)
    try:
        mpfr_set_d(aa, a, MPFR_RNDN)
        mpfr_set_d(bb, b, MPFR_RNDN)
        mpfr_set_d(cc, c, MPFR_RNDN)
        mpfr_set_ui(acc, 0, MPFR_RNDN)
        max_exp2 = 0
        for j in range(n_parties):
            mpfr_ui_pow(den, j, aa, MPFR_RNDN)
            mpfr_mul(den, den, bb, MPFR_RNDN)
            mpfr_add(den, den, cc, MPFR_RNDN)
            mpfr_mul_ui(den, den, n1, MPFR_RNDN)
            mpfr_ui_div(term, n1 - j, den, MPFR_RNDN)
            mpfr_mul_z(term, term, binom, MPFR_RNDN)
            if not mpfr_zero_p(term):
                if not any_term or mpfr_get_exp(term) > max_exp2:
                    max_exp2 = mpfr_get_exp(term)
                any_term = True
            if j % 2 == 0:
                mpfr_add(acc, acc, term, MPFR_RNDN)
            else:
                mpfr_sub(acc, acc, term, MPFR_RNDN)
            if j < n1:
                mpz_mul_ui(binom, binom, n1 - j)
                mpz_divexact_ui(binom, binom, j + 1)
        if not any_term:
            return (0.0, 0.0, 0, 0, False)
        value = mpfr_get_d(acc, MPFR_RNDN)
        mantissa = mpfr_get_d_2exp(&exp2, acc, MPFR_RNDN)
        return (value, mantissa, exp2, max_exp2, True)
    finally:
        mpfr_clear(aa)
        mpfr_clear(bb)
        mpfr_clear(cc)
        mpfr_clear(den)
        mpfr_clear(term)
        mpfr_clear(acc)
        mpz_clear(binom)
