//! Radius searches on top of the encoders.
//!
//! Every probe solves one MILP and turns the optimum into a yes/no decision
//! with the threshold `eps_inv`. The search probes `r_max` first and only
//! bisects `[0, r_max]` when that probe finds a collision, so networks that
//! are invertible everywhere cost a single solve.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bounds::{distance, InputBox, Norm};
use crate::encoder::{encode_problem1, encode_problem2, encode_problem3, EncodeOptions, EncodedProblem};
use crate::milp::{milp_solve_with_clock, Clock, MilpStatus, NoClock, SolveOptions};
use crate::network::ReluMlp;
use crate::Error;

/// Replayed witnesses must collide to this tolerance.
pub const WITNESS_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    Invertibility,
    PseudoInvertibility,
    MappabilityAB,
    MappabilityBA,
}

impl CertificateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateKind::Invertibility => "invertibility",
            CertificateKind::PseudoInvertibility => "pseudo_invertibility",
            CertificateKind::MappabilityAB => "mappability_ab",
            CertificateKind::MappabilityBA => "mappability_ba",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// Objective distance of the pair (input distance, or output distance of
    /// the second network for mappability).
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Probe {
    pub r: f64,
    /// Optimum, or the incumbent/bound that decided a probe stopped by a limit.
    pub p_star: f64,
    pub status: MilpStatus,
    pub collision: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub center: Vec<f64>,
    pub radius: f64,
    pub at_cap: bool,
    pub norm: Norm,
    pub eps_r: f64,
    pub eps_inv: f64,
    pub witness: Option<Witness>,
    pub probes: Vec<Probe>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertifyOptions {
    pub r_max: f64,
    pub eps_r: f64,
    pub eps_inv: f64,
    pub norm: Norm,
    pub solve: SolveOptions,
    pub encode: EncodeOptions,
    /// Stop each probe at the first incumbent above `eps_inv`. Decisions and
    /// radii are unchanged; the logged `p*` of a collision probe is then a
    /// certified lower bound (status `cutoff`) instead of the optimum.
    pub early_stop: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            r_max: 10.0,
            eps_r: 1e-3,
            eps_inv: 1e-4,
            norm: Norm::LInf,
            solve: SolveOptions::default(),
            encode: EncodeOptions::default(),
            early_stop: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CertifyError {
    #[error(transparent)]
    Model(#[from] Error),
    #[error("probe at r = {r} inconclusive ({}), best bound {best_bound}", status.as_str())]
    Inconclusive {
        r: f64,
        status: MilpStatus,
        best_bound: f64,
        partial: Box<Certificate>,
    },
    #[error("p*(r) is not monotone along the probe log: {0}")]
    NonMonotone(String),
    #[error("witness at r = {r} fails replay: {reason}")]
    WitnessReplay { r: f64, reason: String },
    #[error("pseudo-invertibility radius {big_r} is below invertibility radius {r}")]
    RadiusOrder { r: f64, big_r: f64 },
}

/// Outcome of a single probe.
#[derive(Debug, Clone, PartialEq)]
pub struct Gap {
    pub p_star: f64,
    pub status: MilpStatus,
    pub collision: bool,
    pub witness: Option<Witness>,
}

pub struct Certifier<'c> {
    pub options: CertifyOptions,
    clock: &'c dyn Clock,
}

impl Certifier<'static> {
    pub fn new(options: CertifyOptions) -> Self {
        Self {
            options,
            clock: &NoClock,
        }
    }
}

impl<'c> Certifier<'c> {
    pub fn with_clock(options: CertifyOptions, clock: &'c dyn Clock) -> Self {
        Self { options, clock }
    }

    fn input_box(&self, center: &[f64], r: f64) -> Result<InputBox, CertifyError> {
        Ok(InputBox::new(center.to_vec(), r, self.options.norm)?)
    }

    /// Solves an encoded problem and decides it. `replay` checks a decoded
    /// pair and returns its objective distance.
    fn decide(
        &self,
        p: &EncodedProblem,
        replay: impl Fn(&[f64], &[f64]) -> Result<f64, String>,
    ) -> Result<Gap, CertifyError> {
        let r = p.input_box.radius;
        let eps = self.options.eps_inv;
        let mut solve = self.options.solve;
        if self.options.early_stop {
            solve.cutoff = Some(eps);
        }
        let s = milp_solve_with_clock(&p.model, &solve, self.clock);
        let (p_star, collision) = match s.status {
            MilpStatus::Optimal => (s.objective, s.objective > eps),
            MilpStatus::Cutoff => (s.objective, true),
            MilpStatus::NodeLimit | MilpStatus::TimeLimit if s.has_incumbent() && s.objective > eps => {
                (s.objective, true)
            }
            MilpStatus::NodeLimit | MilpStatus::TimeLimit if s.best_bound <= eps => {
                (s.best_bound, false)
            }
            status => {
                return Err(CertifyError::Inconclusive {
                    r,
                    status,
                    best_bound: s.best_bound,
                    partial: Box::new(self.empty(CertificateKind::Invertibility, &p.input_box.center)),
                })
            }
        };
        let witness = if collision {
            let d = p.decode(&s.assignment);
            let ib = &p.input_box;
            let tol = 1e-7 * (1.0 + r);
            if !ib.contains(&d.x, tol) || !ib.contains(&d.y, tol) {
                return Err(CertifyError::WitnessReplay {
                    r,
                    reason: String::from("point outside the ball"),
                });
            }
            let gap = replay(&d.x, &d.y).map_err(|reason| CertifyError::WitnessReplay { r, reason })?;
            Some(Witness { x: d.x, y: d.y, gap })
        } else {
            None
        };
        Ok(Gap {
            p_star,
            status: s.status,
            collision,
            witness,
        })
    }

    fn empty(&self, kind: CertificateKind, center: &[f64]) -> Certificate {
        Certificate {
            kind,
            center: center.to_vec(),
            radius: 0.0,
            at_cap: false,
            norm: self.options.norm,
            eps_r: self.options.eps_r,
            eps_inv: self.options.eps_inv,
            witness: None,
            probes: Vec::new(),
        }
    }

    /// `p*` of the invertibility problem on one ball.
    pub fn noninvertibility_gap(&self, net: &ReluMlp, input_box: &InputBox) -> Result<Gap, CertifyError> {
        let p = encode_problem1(net, input_box, &self.options.encode)?;
        self.decide(&p, |x, y| {
            collide(net, x, y)?;
            Ok(distance(input_box.norm, x, y))
        })
    }

    /// `P*` of the pseudo-invertibility problem on one ball.
    pub fn pseudo_gap(&self, net: &ReluMlp, input_box: &InputBox) -> Result<Gap, CertifyError> {
        let p = encode_problem2(net, input_box)?;
        self.decide(&p, |x, y| {
            collide(net, x, y)?;
            Ok(distance(input_box.norm, x, y))
        })
    }

    /// `p₁₂*`: largest change of `net_b` between points `net_a` cannot tell apart.
    pub fn mappability_gap(
        &self,
        net_a: &ReluMlp,
        net_b: &ReluMlp,
        input_box: &InputBox,
    ) -> Result<Gap, CertifyError> {
        let p = encode_problem3(net_a, net_b, input_box)?;
        self.decide(&p, |x, y| {
            collide(net_a, x, y)?;
            let fx = net_b.forward(x).map_err(|e| alloc::format!("{e}"))?;
            let fy = net_b.forward(y).map_err(|e| alloc::format!("{e}"))?;
            Ok(distance(input_box.norm, &fx, &fy))
        })
    }

    fn search(
        &self,
        kind: CertificateKind,
        center: &[f64],
        probe: impl Fn(&InputBox) -> Result<Gap, CertifyError>,
    ) -> Result<Certificate, CertifyError> {
        let o = &self.options;
        if !(o.r_max > 0.0) || !(o.eps_r > 0.0) {
            return Err(Error::InvalidArgument(String::from("r_max and eps_r must be positive")).into());
        }
        let mut cert = self.empty(kind, center);
        let run = |r: f64, cert: &mut Certificate| -> Result<bool, CertifyError> {
            let g = match probe(&self.input_box(center, r)?) {
                Ok(g) => g,
                Err(CertifyError::Inconclusive {
                    r, status, best_bound, ..
                }) => {
                    return Err(CertifyError::Inconclusive {
                        r,
                        status,
                        best_bound,
                        partial: Box::new(cert.clone()),
                    })
                }
                Err(e) => return Err(e),
            };
            cert.probes.push(Probe {
                r,
                p_star: g.p_star,
                status: g.status,
                collision: g.collision,
            });
            if cert.witness.is_none() {
                cert.witness = g.witness;
            }
            check_monotone(&cert.probes, &o.solve)?;
            Ok(g.collision)
        };
        if !run(o.r_max, &mut cert)? {
            cert.radius = o.r_max;
            cert.at_cap = true;
            return Ok(cert);
        }
        let (mut lo, mut hi) = (0.0, o.r_max);
        while hi - lo > o.eps_r {
            let mid = 0.5 * (lo + hi);
            if run(mid, &mut cert)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        cert.radius = lo;
        Ok(cert)
    }

    /// Largest `r` (up to the bisection tolerance) on which `net` is
    /// injective around `center`.
    pub fn largest_invertible_radius(&self, net: &ReluMlp, center: &[f64]) -> Result<Certificate, CertifyError> {
        self.search(CertificateKind::Invertibility, center, |b| {
            self.noninvertibility_gap(net, b)
        })
    }

    /// Largest `R` such that no other point of the ball shares `f(center)`.
    pub fn largest_pseudo_radius(&self, net: &ReluMlp, center: &[f64]) -> Result<Certificate, CertifyError> {
        self.search(CertificateKind::PseudoInvertibility, center, |b| self.pseudo_gap(net, b))
    }

    /// Both radii, checking `r ≤ R`. The two bisections share one schedule,
    /// so the inequality holds exactly unless the solver contradicts itself.
    pub fn invertibility_pair(
        &self,
        net: &ReluMlp,
        center: &[f64],
    ) -> Result<(Certificate, Certificate), CertifyError> {
        let small = self.largest_invertible_radius(net, center)?;
        let big = self.largest_pseudo_radius(net, center)?;
        if big.radius < small.radius {
            return Err(CertifyError::RadiusOrder {
                r: small.radius,
                big_r: big.radius,
            });
        }
        Ok((small, big))
    }

    /// Radius on which the output of `net_b` is a function of the output of
    /// `net_a` (`kind` only labels the certificate).
    pub fn mappability_radius(
        &self,
        net_a: &ReluMlp,
        net_b: &ReluMlp,
        center: &[f64],
        kind: CertificateKind,
    ) -> Result<Certificate, CertifyError> {
        self.search(kind, center, |b| self.mappability_gap(net_a, net_b, b))
    }

    /// `(r_AB, r_BA)`: `B` as a function of `A`, then `A` as a function of `B`.
    pub fn mappability_radii(
        &self,
        net_a: &ReluMlp,
        net_b: &ReluMlp,
        center: &[f64],
    ) -> Result<(Certificate, Certificate), CertifyError> {
        let ab = self.mappability_radius(net_a, net_b, center, CertificateKind::MappabilityAB)?;
        let ba = self.mappability_radius(net_b, net_a, center, CertificateKind::MappabilityBA)?;
        Ok((ab, ba))
    }
}

fn collide(net: &ReluMlp, x: &[f64], y: &[f64]) -> Result<(), String> {
    let fx = net.forward(x).map_err(|e| alloc::format!("{e}"))?;
    let fy = net.forward(y).map_err(|e| alloc::format!("{e}"))?;
    let d = distance(Norm::LInf, &fx, &fy);
    if d > WITNESS_TOL {
        return Err(alloc::format!("images differ by {d}"));
    }
    Ok(())
}

/// Decisions must be monotone in `r`, and so must the optima of probes
/// solved to optimality (up to the solver gap).
fn check_monotone(probes: &[Probe], solve: &SolveOptions) -> Result<(), CertifyError> {
    for a in probes {
        for b in probes {
            if a.r >= b.r {
                continue;
            }
            if a.collision && !b.collision {
                return Err(CertifyError::NonMonotone(alloc::format!(
                    "collision at r = {} but none at r = {}",
                    a.r,
                    b.r
                )));
            }
            let exact = a.status == MilpStatus::Optimal && b.status == MilpStatus::Optimal;
            let slack = 10.0 * solve.abs_gap + 1e-6 * b.p_star.abs();
            if exact && a.p_star > b.p_star + slack {
                return Err(CertifyError::NonMonotone(alloc::format!(
                    "p*({}) = {} exceeds p*({}) = {}",
                    a.r,
                    a.p_star,
                    b.r,
                    b.p_star
                )));
            }
        }
    }
    Ok(())
}

pub fn noninvertibility_gap(
    net: &ReluMlp,
    input_box: &InputBox,
    options: &CertifyOptions,
) -> Result<Gap, CertifyError> {
    Certifier::new(options.clone()).noninvertibility_gap(net, input_box)
}

pub fn largest_invertible_radius(
    net: &ReluMlp,
    center: &[f64],
    options: &CertifyOptions,
) -> Result<Certificate, CertifyError> {
    Certifier::new(options.clone()).largest_invertible_radius(net, center)
}

pub fn largest_pseudo_radius(
    net: &ReluMlp,
    center: &[f64],
    options: &CertifyOptions,
) -> Result<Certificate, CertifyError> {
    Certifier::new(options.clone()).largest_pseudo_radius(net, center)
}

pub fn mappability_radii(
    net_a: &ReluMlp,
    net_b: &ReluMlp,
    center: &[f64],
    options: &CertifyOptions,
) -> Result<(Certificate, Certificate), CertifyError> {
    Certifier::new(options.clone()).mappability_radii(net_a, net_b, center)
}
