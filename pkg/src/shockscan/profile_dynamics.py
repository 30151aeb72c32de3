"""Dissipation profiles as orbits of the planar profile system.

Integrating the conservation laws once across a steady profile gives

    M(psi) dw/dx = F(w),    F(w) = T^{a1}(psi) - q^a,

with w = (psi_0, psi_1) the covariant state and M the planar matrix of
the dissipation tensor.  A shock profile is a heteroclinic orbit
between the two rest states F = 0.  For the scalar (viscous-only)
reduction the orbit is found by direct quadrature; in general it is
found by shooting along the saddle separatrix.

Classification vocabulary used throughout:

    connected_monotone      orbit reaches the far state, rho monotone
    connected_oscillatory   orbit reaches the far state spiralling
    no_connection           no saddle to shoot from, or budget exhausted
    escaped_domain          orbit leaves psi0 > |psi1| or rho in (0, rho_bar)
    singular_matrix         det M(psi) vanished along the orbit
"""

import numpy as np
from scipy.integrate import quad, solve_ivp

from .fluid_core import FluidState, stress_hessian, flux
from .rankine_hugoniot import u1_of_rho
from .dissipation import (DissipationModel, ft_coefficients_at,
                          CausalityError)


class SingularMatrix(RuntimeError):
    """det M dropped below tolerance along an orbit.

    Carries the offending covariant state and the arclength already
    travelled so callers can report where the profile died.
    """

    def __init__(self, w, detval, arclength):
        self.w = np.array(w)
        self.detval = float(detval)
        self.arclength = float(arclength)
        super().__init__(
            f"profile matrix singular at w = ({w[0]:.6g}, {w[1]:.6g}), "
            f"|det M| = {detval:.3e}")


def state_of_w(w):
    return FluidState(-w[0], w[1])


def planar_rhs(w, shock, model, tol_det=1e-10):
    """dw/dx = M(psi)^-1 F(w) of the profile system at covariant w.

    Raises DomainError outside psi0 > |psi1| and SingularMatrix when
    det M falls below tol_det * ||M||; the shooting solver relies on
    the latter escaping through the integrator.
    """
    state = state_of_w(w)
    M = model.matrix(state)
    det = np.linalg.det(M)
    if abs(det) < tol_det * np.linalg.norm(M):
        raise SingularMatrix(w, abs(det), 0.0)
    F = flux(state, shock.eos) - np.array([shock.q0, shock.q1])
    return np.linalg.solve(M, F)


def lyapunov_eval(state, eos, q0, q1):
    """L = p(theta) psi^1 - q^a psi_a; strictly increasing along
    viscous profiles, the bookkeeping quantity of the samples."""
    return (eos.p(state.theta) * state.psi1
            + q0 * state.psi0 - q1 * state.psi1)


def lyapunov_gradient(state, eos, q0, q1):
    """Gradient of L in the covariant state equals the flux excess F."""
    return flux(state, eos) - np.array([q0, q1])


def oscillation_detect(rho, rel_tol=1e-9):
    """True when the density samples fail to be monotone."""
    rho = np.asarray(rho, dtype=float)
    if rho.size < 3:
        return False
    dr = np.diff(rho)
    slack = rel_tol * max(1.0, float(np.abs(rho).max()))
    return not (np.all(dr > -slack) or np.all(dr < slack))


class RestPointReport:
    """Linearization M^-1 dF/dw at a rest state of the profile system."""

    TYPES = ("source", "sink", "saddle", "spiral-source", "spiral-sink",
             "degenerate")

    def __init__(self, label, state, eigenvalues, eigenvectors):
        self.label = label
        self.state = state
        self.eigenvalues = eigenvalues
        self.eigenvectors = eigenvectors
        self.kind = self._classify(eigenvalues)

    @staticmethod
    def _classify(lam, tol=1e-9):
        scale = float(np.abs(lam).max())
        if scale == 0.0:
            return "degenerate"
        re, im = lam.real / scale, lam.imag / scale
        if np.any(np.abs(im) > tol):
            if np.all(re > tol):
                return "spiral-source"
            if np.all(re < -tol):
                return "spiral-sink"
            return "degenerate"
        if np.any(np.abs(re) <= tol):
            return "degenerate"
        if re.min() < 0.0 < re.max():
            return "saddle"
        return "source" if re.min() > 0.0 else "sink"

    @property
    def is_saddle(self):
        return self.kind == "saddle"

    @property
    def is_spiral(self):
        return self.kind.startswith("spiral")

    def as_dict(self):
        return {
            "label": self.label,
            "psi": [self.state.psi0, self.state.psi1],
            "eigenvalues": [[float(l.real), float(l.imag)]
                            for l in self.eigenvalues],
            "kind": self.kind,
        }


def rest_point_classify(label, state, model, eos, tol_det=1e-10):
    """Eigen-decompose the profile linearization at a rest state."""
    M = model.matrix(state)
    det = abs(np.linalg.det(M))
    if det < tol_det * np.linalg.norm(M):
        raise SingularMatrix(state.cov, det, 0.0)
    H1 = stress_hessian(state, eos, 1)
    lam, vec = np.linalg.eig(np.linalg.solve(M, H1))
    return RestPointReport(label, state, lam, vec)


class ProfileResult:
    """Outcome of one profile computation.

    Connected profiles carry sample arrays (x, psi0, psi1, rho, u1, L)
    centered so that rho crosses the midpoint density at x = 0; failed
    ones carry the failure diagnostics instead.
    """

    def __init__(self, classification, shock, model, reason="",
                 x=None, w=None, rho=None, u1=None, lyap=None,
                 rest_points=(), endpoint_errors=None, width=None,
                 n_steps=0, arclength=0.0, settings=None):
        self.classification = classification
        self.shock = shock
        self.model = model
        self.reason = reason
        self.x = x
        self.w = w
        self.rho = rho
        self.u1 = u1
        self.lyap = lyap
        self.rest_points = list(rest_points)
        self.endpoint_errors = endpoint_errors or {}
        self.width = width
        self.n_steps = n_steps
        self.arclength = arclength
        self.settings = dict(settings or {})

    @property
    def connected(self):
        return self.classification.startswith("connected")

    def to_csv(self, path):
        if not self.connected or self.x is None:
            raise ValueError(
                f"no samples to write for a {self.classification} result")
        with open(path, "w") as fh:
            fh.write("x,psi0,psi1,rho,u1,L\n")
            for i in range(len(self.x)):
                fh.write("%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n" % (
                    self.x[i], -self.w[i, 0], self.w[i, 1],
                    self.rho[i], self.u1[i], self.lyap[i]))

    def summary_dict(self):
        d = {
            "classification": self.classification,
            "reason": self.reason,
            "model": self.model.describe(),
            "shock": self.shock.as_dict(),
            "rest_points": [rp.as_dict() for rp in self.rest_points],
            "endpoint_errors": self.endpoint_errors,
            "width": self.width,
            "n_steps": self.n_steps,
            "arclength": self.arclength,
            "settings": self.settings,
        }
        return d


def _default_settings(**overrides):
    s = dict(rtol=1e-10, atol=1e-12, tol_conn=1e-6, tol_det=1e-10,
             tol_osc=1e-6, tol_spiral=1e-3, budget=1e4, method="RK45",
             xmax=1e9)
    for k, v in overrides.items():
        if k not in s:
            raise TypeError(f"unknown solver setting {k!r}")
        if v is not None:
            s[k] = v
    return s


def scalar_profile_ft(shock, co, eos=None, **overrides):
    """Viscous-only profile by quadrature of the scalar reduction.

    With chi = 0 the planar system collapses onto the manifold
    u1 = u1(rho) and the density obeys

        drho/dx = R(rho) * q0^2 / (sigma(rho) (rho+q1) u1(rho)^3),
        R(rho)  = q1 - p(rho) - (rho + p(rho)) u1(rho)^2,

    with R > 0 strictly between the end states, so the profile exists,
    is monotone, and is unique up to translation.  Integration starts
    at the midpoint density (x = 0) and runs both ways until rho is
    within tol_conn * amplitude of the end states.
    """
    if co.chi != 0.0:
        raise ValueError("scalar reduction requires chi = 0; "
                         "use shoot_heteroclinic for heat conduction")
    st = _default_settings(**overrides)
    eos = eos or shock.eos
    q0, q1 = shock.q0, shock.q1
    rm, rp = shock.rho_minus, shock.rho_plus
    amp = rp - rm

    def R_of(rho):
        ph = eos.p_hat(rho)
        u1 = u1_of_rho(eos, rho, q0, q1)
        return q1 - ph - (rho + ph) * u1 * u1

    def rho_prime(rho):
        u1 = u1_of_rho(eos, rho, q0, q1)
        state = FluidState.from_rho_u1(eos, rho, u1)
        sig, _ = ft_coefficients_at(state, eos, co)
        if sig <= 0.0:
            raise CausalityError(f"sigma(rho={rho:g}) = {sig:g} <= 0")
        return R_of(rho) * q0 ** 2 / (sig * (rho + q1) * u1 ** 3)

    # sign structure: R vanishes at the end states and is positive
    # strictly between them, otherwise the quadrature is meaningless
    interior = rm + amp * np.linspace(0.02, 0.98, 25)
    Rv = np.array([R_of(r) for r in interior])
    scale = max(abs(R_of(0.5 * (rm + rp))), 1e-300)
    if abs(R_of(rm)) > 1e-8 * scale or abs(R_of(rp)) > 1e-8 * scale:
        return ProfileResult("no_connection", shock, _co_model(co, eos),
                             reason="R does not vanish at the end states",
                             settings=st)
    if Rv.min() <= 0.0:
        return ProfileResult("no_connection", shock, _co_model(co, eos),
                             reason="R changes sign between the end states",
                             settings=st)

    rho_mid = 0.5 * (rm + rp)
    cut_lo, cut_hi = rm + st["tol_conn"] * amp, rp - st["tol_conn"] * amp

    def rhs(x, y):
        return [rho_prime(y[0])]

    def ev_hi(x, y):
        return y[0] - cut_hi
    ev_hi.terminal = True

    def ev_lo(x, y):
        return y[0] - cut_lo
    ev_lo.terminal = True

    kw = dict(rtol=st["rtol"], atol=st["atol"] * amp, method=st["method"])
    fwd = solve_ivp(rhs, (0.0, st["xmax"]), [rho_mid], events=[ev_hi], **kw)
    bwd = solve_ivp(rhs, (0.0, -st["xmax"]), [rho_mid], events=[ev_lo], **kw)
    xs = np.concatenate([bwd.t[::-1], fwd.t[1:]])
    rho = np.concatenate([bwd.y[0, ::-1], fwd.y[0, 1:]])

    u1 = np.array([u1_of_rho(eos, r, q0, q1) for r in rho])
    states = [FluidState.from_rho_u1(eos, r, u) for r, u in zip(rho, u1)]
    w = np.array([s.cov for s in states])
    lyap = np.array([lyapunov_eval(s, eos, q0, q1) for s in states])

    # 1D linearizations at the rest densities: repelling at rho_minus,
    # attracting at rho_plus when the profile exists
    delta = 1e-6 * amp
    reports = []
    for label, r0 in (("minus", rm), ("plus", rp)):
        lam = (rho_prime(r0 + delta) - rho_prime(r0 - delta)) / (2 * delta)
        st0 = FluidState.from_rho_u1(eos, r0, u1_of_rho(eos, r0, q0, q1))
        reports.append(RestPointReport(
            label, st0, np.array([lam], dtype=complex),
            np.array([[1.0]])))

    # width of the layer: x-extent of the middle 90 percent of the jump
    q_lo, q_hi = rm + 0.05 * amp, rm + 0.95 * amp
    width = quad(lambda r: 1.0 / rho_prime(r), q_lo, q_hi, limit=200)[0]

    err = {
        "left": float(abs(rho[0] - rm)) / amp,
        "right": float(abs(rho[-1] - rp)) / amp,
    }
    return ProfileResult(
        "connected_monotone", shock, _co_model(co, eos),
        x=xs, w=w, rho=rho, u1=u1, lyap=lyap, rest_points=reports,
        endpoint_errors=err, width=float(width),
        n_steps=len(xs), arclength=float(np.abs(np.diff(rho)).sum()),
        settings=st)


def _co_model(co, eos):
    tag = "ft-heat" if co.chi else "ft-viscous"
    return DissipationModel(tag, co, eos)


def shoot_heteroclinic(shock, model, **overrides):
    """Saddle-separatrix shooting for the planar profile system.

    Shoots backward from just off the saddle at the downstream state
    when that state is a saddle, otherwise forward from the upstream
    saddle; with no saddle at either end no orbit can connect and the
    result is an immediate no_connection.  Terminal outcomes:

      * entering the tol_conn ball of the far state  -> connected
      * leaving the physical domain                  -> escaped_domain
      * det M(psi) below tol_det along the orbit     -> singular_matrix
      * arclength budget exhausted                   -> no_connection,
        unless the tail certifies a shrinking spiral around the target
        (three successive windings inside the tol_spiral ball), which
        counts as connected_oscillatory.
    """
    st = _default_settings(**overrides)
    eos = shock.eos
    q = np.array([shock.q0, shock.q1])
    wm = shock.state_minus.cov
    wp = shock.state_plus.cov
    amp = float(np.linalg.norm(wp - wm))
    rbar = shock.rho_bar
    rho_floor = 1e-10 * shock.rho_minus

    try:
        rp_minus = rest_point_classify("minus", shock.state_minus, model,
                                       eos, st["tol_det"])
        rp_plus = rest_point_classify("plus", shock.state_plus, model,
                                      eos, st["tol_det"])
    except SingularMatrix as exc:
        return ProfileResult("singular_matrix", shock, model,
                             reason=str(exc), settings=st)
    reports = [rp_minus, rp_plus]

    if rp_plus.is_saddle:
        src_rp, tgt_rp, direction = rp_plus, rp_minus, -1.0
        idx = int(np.argmin(src_rp.eigenvalues.real))
    elif rp_minus.is_saddle:
        src_rp, tgt_rp, direction = rp_minus, rp_plus, +1.0
        idx = int(np.argmax(src_rp.eigenvalues.real))
    else:
        return ProfileResult(
            "no_connection", shock, model,
            reason=f"no saddle at either end state "
                   f"(minus: {rp_minus.kind}, plus: {rp_plus.kind})",
            rest_points=reports, settings=st)

    src = src_rp.state.cov
    tgt = tgt_rp.state.cov
    v = np.real(src_rp.eigenvectors[:, idx])
    v = v / np.linalg.norm(v)
    if v @ (tgt - src) < 0.0:
        v = -v
    eps = 1e-8 * (np.linalg.norm(wp) + amp)
    tol_conn = st["tol_conn"] * amp
    tol_det = st["tol_det"]

    def rhs(x, y):
        w = y[:2]
        if -w[0] - abs(w[1]) <= 0.0:
            # trial step outside the state space: poison the step so
            # the controller shrinks it, the cone event ends the orbit
            return [np.nan, np.nan, np.nan]
        try:
            dw = direction * planar_rhs(w, shock, model, tol_det)
        except SingularMatrix as exc:
            exc.arclength = float(y[2])
            raise
        return [dw[0], dw[1], float(np.hypot(dw[0], dw[1]))]

    def ev_conn(x, y):
        return float(np.linalg.norm(y[:2] - tgt)) - tol_conn
    ev_conn.terminal = True

    def ev_cone(x, y):
        return -y[0] - abs(y[1]) - 1e-12
    ev_cone.terminal = True

    def ev_rho(x, y):
        d = y[0] ** 2 - y[1] ** 2
        if d <= 0.0:
            return -1.0
        rho = eos.rho(d ** -0.5)
        return min(rbar - rho, rho - rho_floor)
    ev_rho.terminal = True

    def ev_arc(x, y):
        return y[2] - st["budget"] * amp
    ev_arc.terminal = True

    y0 = np.array([src[0] + eps * v[0], src[1] + eps * v[1], 0.0])
    try:
        sol = solve_ivp(rhs, (0.0, st["xmax"]), y0,
                        events=[ev_conn, ev_cone, ev_rho, ev_arc],
                        rtol=st["rtol"], atol=st["atol"],
                        method=st["method"])
    except SingularMatrix as exc:
        return ProfileResult("singular_matrix", shock, model,
                             reason=str(exc), rest_points=reports,
                             arclength=exc.arclength, settings=st)

    hit = {name: len(te) > 0 for name, te in
           zip(("conn", "cone", "rho", "arc"), sol.t_events)}
    w_traj = sol.y[:2].T
    arclen = float(sol.y[2, -1]) if sol.y.shape[1] else 0.0

    if sol.status < 0 and not any(hit.values()):
        # step size underflow: the integrator ground to a halt without
        # reaching any event.  Find out what it ran into.
        cls, why = _diagnose_stall(w_traj[-1], direction, model, eos, q,
                                   tol_det, rbar, rho_floor, amp)
        return ProfileResult(cls, shock, model, reason=why,
                             rest_points=reports, n_steps=sol.t.size,
                             arclength=arclen, settings=st)

    if hit["cone"] or hit["rho"]:
        return ProfileResult("escaped_domain", shock, model,
                             reason="orbit left the physical domain",
                             rest_points=reports, n_steps=sol.t.size,
                             arclength=arclen, settings=st)

    spiral_target = bool(np.any(
        np.abs(tgt_rp.eigenvalues.imag)
        > st["tol_osc"] * np.abs(tgt_rp.eigenvalues)))

    if not hit["conn"]:
        if spiral_target and _spiral_certificate(
                w_traj, tgt, amp, st["tol_spiral"]):
            return _assemble(shock, model, sol, direction, src_rp, tgt_rp,
                             reports, st, amp,
                             "connected_oscillatory",
                             reason="budget ended inside a shrinking "
                                    "spiral around the target")
        why = ("arclength budget exhausted" if hit["arc"]
               else f"integrator stopped (status {sol.status})")
        return ProfileResult("no_connection", shock, model, reason=why,
                             rest_points=reports, n_steps=sol.t.size,
                             arclength=arclen, settings=st)

    th = (w_traj[:, 0] ** 2 - w_traj[:, 1] ** 2) ** -0.5
    rho_traj = np.array([eos.rho(t) for t in th])
    cls = ("connected_oscillatory"
           if spiral_target or oscillation_detect(rho_traj)
           else "connected_monotone")
    return _assemble(shock, model, sol, direction, src_rp, tgt_rp,
                     reports, st, amp, cls)


def _diagnose_stall(w, direction, model, eos, q, tol_det, rbar, rho_floor,
                    amp):
    """Post-mortem for a step-size underflow.

    The integrator cannot cross the singular locus of M or the domain
    boundary: the derivative blows up and the step control underflows
    just short of it, so no event fires.  Probe a short ray along the
    orbit tangent: a sign change (or collapse) of det M certifies the
    singular locus; proximity to the light cone or to the admissible
    density interval certifies a domain escape.
    """
    psi0, psi1 = -w[0], w[1]
    scale = abs(psi0) + abs(psi1)
    if psi0 - abs(psi1) <= 1e-9 * scale:
        return "escaped_domain", "stalled at the light cone"
    state = FluidState(psi0, psi1)
    rho = eos.rho(state.theta)
    if rho >= rbar * (1.0 - 1e-9) or rho <= rho_floor * (1.0 + 1e-9):
        return "escaped_domain", "stalled at the admissible density bound"
    M = model.matrix(state)
    d0 = np.linalg.det(M)
    tangent = direction * np.linalg.solve(M, flux(state, eos) - q)
    nt = np.linalg.norm(tangent)
    if nt > 0.0:
        tangent = tangent / nt
        for k in range(48):
            wk = w + tangent * (amp * 1e-9 * 2.0 ** k)
            if -wk[0] - abs(wk[1]) <= 0.0:
                break
            Mk = model.matrix(FluidState(-wk[0], wk[1]))
            dk = np.linalg.det(Mk)
            if dk * d0 < 0.0 or abs(dk) < tol_det * np.linalg.norm(Mk):
                return ("singular_matrix",
                        "orbit ran into the singular locus of the "
                        "profile matrix (det M changes sign ahead)")
    return "no_connection", "integrator stalled (step size underflow)"


def _spiral_certificate(w_traj, tgt, amp, tol_spiral):
    """Budget ran out: accept only a documented shrinking spiral.

    Looks for at least three successive radius maxima (one per winding)
    that decrease and all sit inside tol_spiral * amplitude of the
    target.
    """
    r = np.linalg.norm(w_traj - tgt, axis=1)
    if r.size < 16 or r[-1] > tol_spiral * amp:
        return False
    inner = r < tol_spiral * amp
    peaks = [i for i in range(1, len(r) - 1)
             if inner[i] and r[i] >= r[i - 1] and r[i] >= r[i + 1]]
    if len(peaks) < 3:
        return False
    p3 = [r[i] for i in peaks[-3:]]
    return p3[0] > p3[1] > p3[2]


def _assemble(shock, model, sol, direction, src_rp, tgt_rp, reports,
              st, amp, cls, reason=""):
    """Order samples by physical x, center, and evaluate diagnostics."""
    eos = shock.eos
    x = direction * sol.t
    w = sol.y[:2].T
    if direction < 0.0:
        x = x[::-1]
        w = w[::-1]
    th = (w[:, 0] ** 2 - w[:, 1] ** 2) ** -0.5
    rho = np.array([eos.rho(t) for t in th])
    u1 = th * w[:, 1]
    states = [FluidState(-wi[0], wi[1]) for wi in w]
    lyap = np.array([lyapunov_eval(s, eos, shock.q0, shock.q1)
                     for s in states])

    # translation invariance: put the midpoint density crossing at x = 0
    rho_mid = 0.5 * (shock.rho_minus + shock.rho_plus)
    x = x - _first_crossing(x, rho, rho_mid)

    width = _width_of(x, rho, shock)
    err = {
        "left": float(np.linalg.norm(w[0] - shock.state_minus.cov)) / amp,
        "right": float(np.linalg.norm(w[-1] - shock.state_plus.cov)) / amp,
    }
    return ProfileResult(cls, shock, model, reason=reason, x=x, w=w,
                         rho=rho, u1=u1, lyap=lyap, rest_points=reports,
                         endpoint_errors=err, width=width,
                         n_steps=sol.t.size,
                         arclength=float(sol.y[2, -1]), settings=st)


def _first_crossing(x, rho, level):
    s = np.sign(rho - level)
    idx = np.nonzero(np.diff(s))[0]
    if idx.size == 0:
        return x[int(np.argmin(np.abs(rho - level)))]
    i = int(idx[0])
    r0, r1 = rho[i], rho[i + 1]
    if r1 == r0:
        return x[i]
    return x[i] + (level - r0) * (x[i + 1] - x[i]) / (r1 - r0)


def _width_of(x, rho, shock):
    amp = shock.rho_plus - shock.rho_minus
    lo = shock.rho_minus + 0.05 * amp
    hi = shock.rho_minus + 0.95 * amp
    return float(_first_crossing(x, rho, hi) - _first_crossing(x, rho, lo))
