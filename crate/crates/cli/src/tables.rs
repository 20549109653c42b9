//! Exact moment tables as CSV: every rational is emitted both as a
//! fraction string (zero-loss, toolchain-independent) and as a decimal.

use num_rational::BigRational;
use num_traits::ToPrimitive;

use permlab::caps;
use permlab::moments::{
    a2_bruteforce, a2_tilde_bruteforce, a_d_closed, bound_profiles, identity_matrix_ratios,
};

fn both(x: &BigRational) -> (String, String) {
    (x.to_string(), x.to_f64().map_or("nan".into(), |v| v.to_string()))
}

pub fn render(n_max: usize, d_max: u64) -> String {
    let mut out = String::from(
        "n,d,a_d,a_d_dec,a2,a2_dec,a2_tilde,a2_tilde_dec,unsym_ratio,unsym_ratio_dec,\
         sym_ratio,sym_ratio_dec,envelope_exact,envelope_exact_dec,envelope_exp,\
         floor_exact,floor_exact_dec\n",
    );
    for n in 1..=n_max {
        for d in 1..=d_max {
            let (a_d, a_d_dec) = both(&a_d_closed(n, d));
            // The quadruple enumeration only reaches n = 4; larger rows
            // leave the second-moment columns empty.
            let (a2, a2_dec, tilde, tilde_dec, ratios) = if n <= caps::A2_QUADRUPLE {
                let a2 = a2_bruteforce(n, d, caps::A2_QUADRUPLE).expect("within cap");
                let tilde = a2_tilde_bruteforce(n, d, caps::A2_QUADRUPLE).expect("within cap");
                let r = identity_matrix_ratios(n, d, caps::A2_QUADRUPLE).expect("within cap");
                let (a2_s, a2_d) = both(&a2);
                let (t_s, t_d) = both(&tilde);
                (a2_s, a2_d, t_s, t_d, Some(r))
            } else {
                (String::new(), String::new(), String::new(), String::new(), None)
            };
            let (unsym, unsym_dec, sym, sym_dec) = match &ratios {
                Some(r) => {
                    let (a, b) = both(&r.unsym_gaussian_ratio);
                    let (c, e) = both(&r.sym_gaussian_ratio);
                    (a, b, c, e)
                }
                None => (String::new(), String::new(), String::new(), String::new()),
            };
            let profile = bound_profiles(n, d);
            let (env, env_dec) = both(&profile.envelope_exact);
            let (floor, floor_dec) = both(&profile.floor_exact);
            out.push_str(&format!(
                "{n},{d},{a_d},{a_d_dec},{a2},{a2_dec},{tilde},{tilde_dec},{unsym},{unsym_dec},\
                 {sym},{sym_dec},{env},{env_dec},{},{floor},{floor_dec}\n",
                profile.envelope_exp
            ));
        }
    }
    out
}
