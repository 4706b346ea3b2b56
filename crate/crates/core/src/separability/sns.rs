use super::find_separating_hyperplane;
use crate::error::{Error, Result};
use crate::geom::ConvexBody;

/// Whether `body` meets conv(⋃ preds): no strictly separating line exists.
pub fn meets_hull_of(body: &ConvexBody, preds: &[ConvexBody]) -> Result<bool> {
    if preds.is_empty() {
        return Ok(true);
    }
    Ok(find_separating_hyperplane(std::slice::from_ref(body), preds, true)?.is_none())
}

/// An ordering in which every body meets the convex hull of its predecessors.
///
/// "Meets conv(S)" only becomes easier as S grows, so from a fixed first body the greedy
/// closure reaches every body any valid ordering could; trying each first body makes the
/// search exact at O(n³) hull tests.
pub fn is_sns(bodies: &[ConvexBody]) -> Result<Option<Vec<usize>>> {
    if bodies.is_empty() {
        return Err(Error::InvalidInput("empty family".into()));
    }
    for start in 0..bodies.len() {
        let mut order = vec![start];
        let mut used = vec![false; bodies.len()];
        used[start] = true;
        let mut progress = true;
        while progress && order.len() < bodies.len() {
            progress = false;
            let hull: Vec<ConvexBody> = order.iter().map(|&i| bodies[i].clone()).collect();
            for j in 0..bodies.len() {
                if !used[j] && meets_hull_of(&bodies[j], &hull)? {
                    used[j] = true;
                    order.push(j);
                    progress = true;
                    break;
                }
            }
        }
        if order.len() == bodies.len() {
            return Ok(Some(order));
        }
    }
    Ok(None)
}

/// Exhaustive search over subsets with memoization. Oracle for [`is_sns`].
pub fn is_sns_subset_dp(bodies: &[ConvexBody]) -> Result<Option<Vec<usize>>> {
    let n = bodies.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty family".into()));
    }
    if n > 20 {
        return Err(Error::TooLargeForSns);
    }
    // last[mask] = body appended last in some valid ordering of `mask`
    let full = (1usize << n) - 1;
    let mut last: Vec<Option<usize>> = vec![None; 1 << n];
    let mut ok = vec![false; 1 << n];
    ok[0] = true;
    for mask in 1..=full {
        for i in 0..n {
            if mask & (1 << i) == 0 {
                continue;
            }
            let rest = mask & !(1 << i);
            if !ok[rest] {
                continue;
            }
            let preds: Vec<ConvexBody> = (0..n)
                .filter(|j| rest & (1 << j) != 0)
                .map(|j| bodies[j].clone())
                .collect();
            if meets_hull_of(&bodies[i], &preds)? {
                ok[mask] = true;
                last[mask] = Some(i);
                break;
            }
        }
    }
    if !ok[full] {
        return Ok(None);
    }
    let mut order = Vec::with_capacity(n);
    let mut mask = full;
    while mask != 0 {
        let i = last[mask].expect("reachable masks record their last body");
        order.push(i);
        mask &= !(1 << i);
    }
    order.reverse();
    Ok(Some(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Vec2;

    fn disk(x: f64, y: f64) -> ConvexBody {
        ConvexBody::disk(Vec2::new(x, y), 1.0).unwrap()
    }

    #[test]
    fn chain_is_sns() {
        let b = [disk(0.0, 0.0), disk(2.0, 0.0), disk(4.0, 0.0)];
        assert_eq!(is_sns(&b).unwrap(), Some(vec![0, 1, 2]));
        assert_eq!(is_sns(&b[..1]).unwrap(), Some(vec![0]));
    }

    #[test]
    fn order_found_when_input_scrambled() {
        let b = [disk(4.0, 0.0), disk(0.0, 0.0), disk(2.0, 0.0), disk(2.0, 2.0)];
        let o = is_sns(&b).unwrap().unwrap();
        assert_eq!(o.len(), 4);
        assert!(is_sns_subset_dp(&b).unwrap().is_some());
    }

    #[test]
    fn apart_is_not_sns() {
        let b = [disk(0.0, 0.0), disk(2.5, 0.0)];
        assert_eq!(is_sns(&b).unwrap(), None);
        assert_eq!(is_sns_subset_dp(&b).unwrap(), None);
    }

    #[test]
    fn dp_size_cap() {
        let b: Vec<ConvexBody> = (0..21).map(|i| disk(2.0 * i as f64, 0.0)).collect();
        assert_eq!(is_sns_subset_dp(&b), Err(Error::TooLargeForSns));
        assert!(is_sns(&b).unwrap().is_some());
    }
}
