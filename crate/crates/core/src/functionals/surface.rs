//! Angular integrals over the unit sphere at a single radius.

use crate::fields::{AngularBasis, Field, ModeJet};

/// `∫_{𝕊^{N-1}} (…) dσ` of the quantities entering the functionals at one radius.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Sphere {
    /// `u²`
    pub uu: f64,
    /// `(λu/r + u_r)²`
    pub hom: f64,
    /// `(∂_φ u)²`
    pub tan: f64,
    /// `(Δu)²`
    pub lap2: f64,
    /// `|u|^{p+1}`
    pub pot: f64,
    /// `Δu · (u_r + r u_rr)`
    pub lap_dxu: f64,
    /// `∂_r(r^{-β}Δu) r^β · u_r`
    pub flux_ur: f64,
    /// `Δu · u_r`
    pub lap_ur: f64,
    /// `∂_r(r^{-β}Δu) r^β · u`
    pub flux_u: f64,
}

/// Point values on the polar nodes at one radius.
pub(crate) struct Samples {
    pub u: Vec<f64>,
    pub ur: Vec<f64>,
    pub urr: Vec<f64>,
    pub uphi: Vec<f64>,
    pub lap: Vec<f64>,
    pub dlap: Vec<f64>,
    pub dlap2: Vec<f64>,
}

pub(crate) fn samples(basis: &AngularBasis, jets: &[ModeJet], n: f64, r: f64) -> Samples {
    let m = basis.weights().len();
    let mut s = Samples {
        u: vec![0.0; m],
        ur: vec![0.0; m],
        urr: vec![0.0; m],
        uphi: vec![0.0; m],
        lap: vec![0.0; m],
        dlap: vec![0.0; m],
        dlap2: vec![0.0; m],
    };
    for jet in jets {
        let psi = basis.psi(jet.degree);
        let dpsi = basis.dpsi(jet.degree);
        let [l0, l1, l2] = jet.laplacian(n, r);
        for j in 0..m {
            s.u[j] += jet.d[0] * psi[j];
            s.ur[j] += jet.d[1] * psi[j];
            s.urr[j] += jet.d[2] * psi[j];
            s.uphi[j] += jet.d[0] * dpsi[j];
            s.lap[j] += l0 * psi[j];
            s.dlap[j] += l1 * psi[j];
            s.dlap2[j] += l2 * psi[j];
        }
    }
    s
}

pub(crate) fn sphere(field: &Field, basis: &AngularBasis, jets: &[ModeJet], r: f64) -> Sphere {
    let params = field.params();
    let (n, p, beta, lambda) = (params.n(), params.p(), params.beta(), params.lambda());
    let s = samples(basis, jets, n, r);
    let mut out = Sphere::default();
    for (j, w) in basis.weights().iter().enumerate() {
        let (u, ur, urr, lap) = (s.u[j], s.ur[j], s.urr[j], s.lap[j]);
        let flux = s.dlap[j] - beta * lap / r;
        let h = lambda * u / r + ur;
        out.uu += w * u * u;
        out.hom += w * h * h;
        out.tan += w * s.uphi[j] * s.uphi[j];
        out.lap2 += w * lap * lap;
        out.pot += w * u.abs().powf(p + 1.0);
        out.lap_dxu += w * lap * (ur + r * urr);
        out.flux_ur += w * flux * ur;
        out.lap_ur += w * lap * ur;
        out.flux_u += w * flux * u;
    }
    out
}

/// Sphere integrals at every node of the field's grid.
pub(crate) fn all_nodes(field: &Field) -> Vec<Sphere> {
    let basis = AngularBasis::new(field.params().n(), field.max_degree());
    field
        .grid()
        .radii()
        .iter()
        .enumerate()
        .map(|(i, &r)| sphere(field, &basis, &field.jets(i), r))
        .collect()
}
