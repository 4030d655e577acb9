use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use libm::erfc;

use crate::error::{invalid, Error, Result};

/// Integer mantissas carry 53 bits, so `m * wtab[i]` is exact in an f64.
pub(crate) const MANTISSA_BITS: u32 = 53;
const MANTISSA_SCALE: f64 = (1u64 << MANTISSA_BITS) as f64;

/// Layer counts above this leave fewer than 53 mantissa bits in one draw.
pub const MAX_LAYERS: usize = 1 << 10;

const MAX_BISECTIONS: usize = 200;
const CLOSURE_TOLERANCE: f64 = 1e-12;

/// Unnormalized standard normal density, `exp(-x^2 / 2)`.
#[inline]
pub fn density(x: f64) -> f64 {
    (-0.5 * x * x).exp()
}

/// `integral_r^inf exp(-t^2/2) dt`.
pub fn tail_area(r: f64) -> f64 {
    (PI / 2.0).sqrt() * erfc(r * FRAC_1_SQRT_2)
}

/// Layer geometry for an `n`-layer normal ziggurat.
///
/// `x` runs from `x[0] = v / f(r)` (the pseudo-width of the base layer,
/// which absorbs the tail) through `x[1] = r` down to `x[n] = 0`. Layer `i`
/// spans `[0, x[i]]` horizontally and `[f(x[i]), f(x[i+1])]` vertically;
/// every layer has area `v`.
///
/// `ktab[i]` is the fast-accept threshold on a 53-bit mantissa and `wtab[i]`
/// maps a mantissa to an abscissa. `ytab` holds `f(x[i])` for `i = 0..=n`,
/// the final entry being `f(0) = 1`, so that `ytab[i + 1]` exists for every
/// layer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZigguratTables {
    n: usize,
    r: f64,
    v: f64,
    x: Vec<f64>,
    ktab: Vec<u64>,
    wtab: Vec<f64>,
    ytab: Vec<f64>,
}

/// Runs the equal-area recursion up from `x[1] = r` and reports how far the
/// top layer misses closing at `f(0) = 1`. Positive when `r` is too small
/// (the layers overshoot the peak early).
fn closure_residual(r: f64, n: usize) -> f64 {
    let v = r * density(r) + tail_area(r);
    let mut x = r;
    for _ in 1..n - 1 {
        let y = density(x) + v / x;
        if y >= 1.0 {
            return 1.0;
        }
        x = (-2.0 * y.ln()).sqrt();
    }
    density(x) + v / x - 1.0
}

fn solve_r(n: usize) -> Result<f64> {
    let (mut lo, mut hi) = (0.1_f64, 20.0_f64);
    if !(closure_residual(lo, n) > 0.0 && closure_residual(hi, n) < 0.0) {
        return Err(Error::TableConstruction(format!(
            "no sign change bracketing r for n = {n}"
        )));
    }
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g = closure_residual(mid, n);
        if g == 0.0 {
            return Ok(mid);
        }
        if g > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (glo, ghi) = (closure_residual(lo, n), closure_residual(hi, n));
    let (r, g) = if glo.abs() <= ghi.abs() { (lo, glo) } else { (hi, ghi) };
    if g.abs() >= CLOSURE_TOLERANCE {
        return Err(Error::TableConstruction(format!(
            "bisection for n = {n} stalled at r = {r} with closure residual {g:e}"
        )));
    }
    Ok(r)
}

static STANDARD_128: OnceLock<Arc<ZigguratTables>> = OnceLock::new();
static STANDARD_256: OnceLock<Arc<ZigguratTables>> = OnceLock::new();

impl ZigguratTables {
    /// Solves for `r` by bisection and fills in every table.
    pub fn build(n: usize) -> Result<Self> {
        if !n.is_power_of_two() || !(2..=MAX_LAYERS).contains(&n) {
            return Err(Error::TableConstruction(format!(
                "layer count {n} must be a power of two in 2..={MAX_LAYERS}"
            )));
        }
        let r = solve_r(n)?;
        let v = r * density(r) + tail_area(r);

        let mut x = Vec::with_capacity(n + 1);
        x.push(v / density(r));
        x.push(r);
        for i in 1..n - 1 {
            let y = density(x[i]) + v / x[i];
            x.push((-2.0 * y.ln()).sqrt());
        }
        x.push(0.0);

        let ktab = (0..n)
            .map(|i| (x[i + 1] / x[i] * MANTISSA_SCALE) as u64)
            .collect();
        let wtab = x[..n].iter().map(|&xi| xi / MANTISSA_SCALE).collect();
        let ytab = x.iter().map(|&xi| density(xi)).collect();

        Ok(ZigguratTables {
            n,
            r,
            v,
            x,
            ktab,
            wtab,
            ytab,
        })
    }

    /// Shared 128- or 256-layer tables, built once per process. Other layer
    /// counts are built fresh.
    pub fn standard(n: usize) -> Result<Arc<Self>> {
        let cell = match n {
            128 => &STANDARD_128,
            256 => &STANDARD_256,
            _ => return Ok(Arc::new(Self::build(n)?)),
        };
        if let Some(t) = cell.get() {
            return Ok(Arc::clone(t));
        }
        let built = Arc::new(Self::build(n)?);
        Ok(Arc::clone(cell.get_or_init(|| built)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn ktab(&self) -> &[u64] {
        &self.ktab
    }

    pub fn wtab(&self) -> &[f64] {
        &self.wtab
    }

    pub fn ytab(&self) -> &[f64] {
        &self.ytab
    }

    pub fn index_bits(&self) -> u32 {
        self.n.trailing_zeros()
    }

    /// Structural checks applied to tables loaded from outside.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if !n.is_power_of_two() || !(2..=MAX_LAYERS).contains(&n) {
            return Err(invalid(format!("layer count {n} is not a power of two in 2..={MAX_LAYERS}")));
        }
        if self.x.len() != n + 1
            || self.ytab.len() != n + 1
            || self.ktab.len() != n
            || self.wtab.len() != n
        {
            return Err(invalid("table lengths do not match the layer count"));
        }
        if self.x[n] != 0.0 || self.x[1] != self.r {
            return Err(invalid("x must start its layers at r and close at 0"));
        }
        if !self.x.windows(2).all(|w| w[0] > w[1]) {
            return Err(invalid("x must be strictly decreasing"));
        }
        if !self.ytab.windows(2).all(|w| w[0] < w[1]) {
            return Err(invalid("ytab must be strictly increasing"));
        }
        if self.ktab.iter().any(|&k| k > 1 << MANTISSA_BITS) {
            return Err(invalid("ktab entry exceeds the mantissa range"));
        }
        Ok(())
    }

    /// JSON document `{n, r, v, x, ktab, wtab, ytab}` with every real written
    /// to 17 significant digits.
    pub fn to_json(&self) -> String {
        fn reals(xs: &[f64]) -> String {
            let cells: Vec<String> = xs.iter().map(|x| format!("{x:.16e}")).collect();
            format!("[{}]", cells.join(", "))
        }
        let ktab: Vec<String> = self.ktab.iter().map(u64::to_string).collect();
        format!(
            "{{\n  \"n\": {},\n  \"r\": {:.16e},\n  \"v\": {:.16e},\n  \"x\": {},\n  \"ktab\": [{}],\n  \"wtab\": {},\n  \"ytab\": {}\n}}\n",
            self.n,
            self.r,
            self.v,
            reals(&self.x),
            ktab.join(", "),
            reals(&self.wtab),
            reals(&self.ytab),
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let tables: ZigguratTables = serde_json::from_str(text)?;
        tables.validate()?;
        Ok(tables)
    }
}
