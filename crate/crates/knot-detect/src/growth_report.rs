//! The growth constants, decay certificate and counting series as JSON.

use knot_detect_core::growth::{
    bt_series, decay_bound, singularity_constants, solve_at, GrowthError, QuadraticNumber, TruncatedSeries,
};
use serde_json::{json, Value};

pub const DECIMAL_DIGITS: u32 = 15;

fn constant(x: &QuadraticNumber) -> Value {
    json!({ "exact": x.to_string(), "decimal": x.to_decimal(DECIMAL_DIGITS) })
}

fn coefficients(s: &TruncatedSeries) -> Vec<String> {
    s.coeffs().iter().map(|c| c.to_string()).collect()
}

/// Constants, certificate and the series to `order`. Ratios
/// `c_{n+1}/c_n` of the alternating-tangle series are listed for the last
/// quarter of the computed range.
pub fn growth_report(order: usize) -> Result<Value, GrowthError> {
    let c = singularity_constants();
    let delta = decay_bound();
    let at = solve_at(order)?;
    let bt = bt_series(order);
    let ratios: Vec<Value> = (order - order / 4..order)
        .filter_map(|n| at.ratio_estimate(n).map(|r| json!({ "n": n, "ratio": format!("{r:.15}") })))
        .collect();
    Ok(json!({
        "constants": {
            "z1": constant(&c.z1),
            "z2": constant(&c.z2),
            "lower": constant(&c.lower),
            "upper": constant(&c.upper),
        },
        "delta": {
            "rounded_ratio": delta.rounded_ratio.to_string(),
            "threshold": delta.threshold.to_string(),
            "exact_ratio": delta.exact_ratio,
            "holds": delta.holds,
        },
        "series": {
            "order": order,
            "counting": at.is_counting_series() && bt.is_counting_series(),
            "bt": coefficients(&bt),
            "at": coefficients(&at),
            "at_ratios": ratios,
        },
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_order_report() {
        let v = growth_report(12).unwrap();
        assert_eq!(v["constants"]["lower"]["exact"], "(101+sqrt(21001))/40");
        assert!(v["constants"]["lower"]["decimal"].as_str().unwrap().starts_with("6.1479"));
        assert!(v["constants"]["upper"]["decimal"].as_str().unwrap().starts_with("6.1432"));
        assert_eq!(v["constants"]["upper"]["decimal"].as_str().unwrap().len(), 17);
        assert_eq!(v["delta"]["holds"], true);
        assert_eq!(v["delta"]["rounded_ratio"], "2671/2673");
        assert_eq!(v["series"]["bt"][7], "4");
        assert_eq!(v["series"]["at"].as_array().unwrap().len(), 13);
        assert_eq!(v["series"]["at_ratios"].as_array().unwrap().len(), 3);
        assert_eq!(v["series"]["counting"], true);
    }
}
