//! Ground-set specifications: a possibly infinite subset of ℤ given as a
//! finite set plus finitely many arithmetic progressions.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// An upward arithmetic progression `{start + step*k : k >= 0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Progression {
    pub start: i64,
    pub step: u64,
}

impl Progression {
    pub fn new(start: i64, step: u64) -> Result<Self> {
        if step == 0 {
            return Err(Error::invalid("progression step must be >= 1"));
        }
        Ok(Progression { start, step })
    }

    fn contains_up(&self, g: i64) -> bool {
        g >= self.start && (g - self.start).rem_euclid(self.step as i64) == 0
    }

    /// Membership when read downward, `{start - step*k : k >= 0}`.
    fn contains_down(&self, g: i64) -> bool {
        g <= self.start && (self.start - g).rem_euclid(self.step as i64) == 0
    }
}

/// A subset of ℤ.  `finite` and the upward progressions `ups` describe the
/// sets every standard operation works with; the negative part of such a set
/// is always finite.  Downward progressions (`downs`) can only be introduced
/// through [`GroundSpec::from_parts_two_sided`] / the two-sided JSON parser
/// and are accepted exclusively by operations that explicitly ask for a set
/// with infinitely many negatives.
#[derive(Clone, Debug, PartialEq)]
pub struct GroundSpec {
    finite: BTreeSet<i64>,
    ups: Vec<Progression>,
    downs: Vec<Progression>,
}

impl GroundSpec {
    pub fn from_parts(finite: impl IntoIterator<Item = i64>, ups: Vec<Progression>) -> Self {
        GroundSpec {
            finite: finite.into_iter().collect(),
            ups,
            downs: Vec::new(),
        }
    }

    pub fn from_parts_two_sided(
        finite: impl IntoIterator<Item = i64>,
        ups: Vec<Progression>,
        downs: Vec<Progression>,
    ) -> Self {
        GroundSpec {
            finite: finite.into_iter().collect(),
            ups,
            downs,
        }
    }

    pub fn finite_set(elements: impl IntoIterator<Item = i64>) -> Self {
        GroundSpec::from_parts(elements, Vec::new())
    }

    /// Parse `{"finite":[...], "aps":[{"start":a,"step":d},...]}`.  A spec
    /// with downward progressions is rejected here: every standard result in
    /// this library assumes the negative part is finite.
    pub fn from_json(v: &serde_json::Value) -> Result<GroundSpec> {
        let spec = Self::from_json_two_sided(v)?;
        if !spec.downs.is_empty() {
            return Err(Error::invalid(
                "downward progressions make the negative part infinite, which \
                 no standard operation supports; only `witness tame-growth` \
                 accepts such sets",
            ));
        }
        Ok(spec)
    }

    /// Parse accepting an optional `"downs"` list (each `{start,step}` read
    /// as `{start - step*k : k >= 0}`).
    pub fn from_json_two_sided(v: &serde_json::Value) -> Result<GroundSpec> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::invalid("ground spec must be a JSON object"))?;
        let mut finite = BTreeSet::new();
        if let Some(list) = obj.get("finite") {
            for x in list
                .as_array()
                .ok_or_else(|| Error::invalid("\"finite\" must be an array"))?
            {
                finite.insert(
                    x.as_i64()
                        .ok_or_else(|| Error::invalid("finite part entries must be integers"))?,
                );
            }
        }
        let parse_list = |key: &str| -> Result<Vec<Progression>> {
            let mut out = Vec::new();
            if let Some(list) = obj.get(key) {
                for ap in list
                    .as_array()
                    .ok_or_else(|| Error::invalid(format!("{key:?} must be an array")))?
                {
                    let start = ap
                        .get("start")
                        .and_then(|x| x.as_i64())
                        .ok_or_else(|| Error::invalid("progression needs integer \"start\""))?;
                    let step = ap
                        .get("step")
                        .and_then(|x| x.as_u64())
                        .ok_or_else(|| Error::invalid("progression needs positive \"step\""))?;
                    out.push(Progression::new(start, step)?);
                }
            }
            Ok(out)
        };
        let ups = parse_list("aps")?;
        let downs = parse_list("downs")?;
        Ok(GroundSpec { finite, ups, downs })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let aps: Vec<_> = self
            .ups
            .iter()
            .map(|p| serde_json::json!({"start": p.start, "step": p.step}))
            .collect();
        let mut out = serde_json::json!({
            "finite": self.finite.iter().collect::<Vec<_>>(),
            "aps": aps,
        });
        if !self.downs.is_empty() {
            out["downs"] = self
                .downs
                .iter()
                .map(|p| serde_json::json!({"start": p.start, "step": p.step}))
                .collect::<Vec<_>>()
                .into();
        }
        out
    }

    pub fn contains(&self, g: i64) -> bool {
        self.finite.contains(&g)
            || self.ups.iter().any(|p| p.contains_up(g))
            || self.downs.iter().any(|p| p.contains_down(g))
    }

    /// All members in `[lo, hi]`, sorted and deduplicated.
    pub fn members_in(&self, lo: i64, hi: i64) -> Vec<i64> {
        if lo > hi {
            return Vec::new();
        }
        let mut out = BTreeSet::new();
        for &g in self.finite.range(lo..=hi) {
            out.insert(g);
        }
        for p in &self.ups {
            let step = p.step as i64;
            let first = if p.start >= lo {
                p.start
            } else {
                p.start + ((lo - p.start + step - 1) / step) * step
            };
            let mut g = first;
            while g <= hi {
                out.insert(g);
                g += step;
            }
        }
        for p in &self.downs {
            let step = p.step as i64;
            let first = if p.start <= hi {
                p.start
            } else {
                p.start - ((p.start - hi + step - 1) / step) * step
            };
            let mut g = first;
            while g >= lo {
                out.insert(g);
                g -= step;
            }
        }
        out.into_iter().collect()
    }

    pub fn has_positive(&self) -> bool {
        self.finite.iter().any(|&g| g > 0)
            || !self.ups.is_empty()
            || self.downs.iter().any(|p| p.start > 0)
    }

    pub fn has_negative(&self) -> bool {
        self.finite.iter().any(|&g| g < 0)
            || !self.downs.is_empty()
            || self.ups.iter().any(|p| p.start < 0)
    }

    /// Condensed: both signs occur, or the set is contained in `{0}`.
    pub fn is_condensed(&self) -> bool {
        (self.has_positive() && self.has_negative())
            || (self.finite.iter().all(|&g| g == 0) && self.ups.is_empty() && self.downs.is_empty())
    }

    pub fn positives_infinite(&self) -> bool {
        !self.ups.is_empty()
    }

    pub fn negatives_infinite(&self) -> bool {
        !self.downs.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.ups.is_empty() && self.downs.is_empty()
    }

    /// The full member list of a finite spec.
    pub fn finite_members(&self) -> Option<Vec<i64>> {
        if self.is_finite() {
            Some(self.finite.iter().copied().collect())
        } else {
            None
        }
    }

    /// The (finite) negative part.  Errors when the negative part is
    /// infinite.
    pub fn negatives(&self) -> Result<Vec<i64>> {
        if self.negatives_infinite() {
            return Err(Error::invalid(
                "the negative part of this ground set is infinite",
            ));
        }
        let mut out = BTreeSet::new();
        for &g in self.finite.range(..0) {
            out.insert(g);
        }
        for p in &self.ups {
            if p.start < 0 {
                let mut g = p.start;
                while g < 0 {
                    out.insert(g);
                    g += p.step as i64;
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0)
    }

    /// Smallest positive member, if any.
    pub fn min_positive(&self) -> Option<i64> {
        let mut best: Option<i64> = None;
        let mut consider = |g: i64| {
            if g > 0 && best.is_none_or(|b| g < b) {
                best = Some(g);
            }
        };
        if let Some(&g) = self.finite.range(1..).next() {
            consider(g);
        }
        for p in &self.ups {
            let step = p.step as i64;
            let g = if p.start >= 1 {
                p.start
            } else {
                p.start + ((1 - p.start + step - 1) / step) * step
            };
            consider(g);
        }
        for p in &self.downs {
            if p.start >= 1 {
                let step = p.step as i64;
                consider(p.start - ((p.start - 1) / step) * step);
            }
        }
        best
    }

    /// Largest negative member (the negative closest to 0), if any and
    /// well defined.
    pub fn max_negative(&self) -> Option<i64> {
        let mut best: Option<i64> = None;
        let mut consider = |g: i64| {
            if g < 0 && best.is_none_or(|b| g > b) {
                best = Some(g);
            }
        };
        if let Some(&g) = self.finite.range(..0).next_back() {
            consider(g);
        }
        for p in &self.ups {
            if p.start < 0 {
                let step = p.step as i64;
                // largest member still below zero
                consider(p.start + ((-1 - p.start) / step) * step);
            }
        }
        for p in &self.downs {
            let step = p.step as i64;
            let g = if p.start <= -1 {
                p.start
            } else {
                p.start - ((p.start + 1 + step - 1) / step) * step
            };
            consider(g);
        }
        best
    }

    /// Smallest positive member that is `>= x`.  `None` when no member
    /// qualifies (only possible for bounded positive parts).
    pub fn smallest_positive_ge(&self, x: i64) -> Option<i64> {
        let lo = x.max(1);
        let mut best: Option<i64> = None;
        let mut consider = |g: i64| {
            if g >= lo && best.is_none_or(|b| g < b) {
                best = Some(g);
            }
        };
        if let Some(&g) = self.finite.range(lo..).next() {
            consider(g);
        }
        for p in &self.ups {
            let step = p.step as i64;
            let g = if p.start >= lo {
                p.start
            } else {
                p.start + ((lo - p.start + step - 1) / step) * step
            };
            consider(g);
        }
        for p in &self.downs {
            if p.start >= lo {
                let step = p.step as i64;
                consider(p.start - ((p.start - lo) / step) * step);
            }
        }
        best
    }

    /// Largest negative member `<= x` (i.e. at least as negative as `x`),
    /// preferring the one of smallest absolute value.
    pub fn largest_negative_le(&self, x: i64) -> Option<i64> {
        let hi = x.min(-1);
        let mut best: Option<i64> = None;
        let mut consider = |g: i64| {
            if g <= hi && best.is_none_or(|b| g > b) {
                best = Some(g);
            }
        };
        if let Some(&g) = self.finite.range(..=hi).next_back() {
            consider(g);
        }
        for p in &self.ups {
            if p.start <= hi {
                let step = p.step as i64;
                consider(p.start + ((hi - p.start) / step) * step);
            }
        }
        for p in &self.downs {
            let step = p.step as i64;
            let g = if p.start <= hi {
                p.start
            } else {
                p.start - ((p.start - hi + step - 1) / step) * step
            };
            consider(g);
        }
        best
    }

    /// Remove 0 from the description (0 is treated separately everywhere: it
    /// contributes the single prime atom `(0)`).
    pub fn strip_zero(&self) -> (GroundSpec, bool) {
        let had = self.contains(0);
        if !had {
            return (self.clone(), false);
        }
        let mut finite = self.finite.clone();
        finite.remove(&0);
        let mut ups = Vec::new();
        for p in &self.ups {
            if p.contains_up(0) {
                // split the progression around zero
                if p.start < 0 {
                    let step = p.step as i64;
                    let mut g = p.start;
                    while g < 0 {
                        finite.insert(g);
                        g += step;
                    }
                }
                ups.push(Progression {
                    start: p.step as i64,
                    step: p.step,
                });
            } else {
                ups.push(*p);
            }
        }
        let mut downs = Vec::new();
        for p in &self.downs {
            if p.contains_down(0) {
                if p.start > 0 {
                    let step = p.step as i64;
                    let mut g = p.start;
                    while g > 0 {
                        finite.insert(g);
                        g -= step;
                    }
                }
                downs.push(Progression {
                    start: -(p.step as i64),
                    step: p.step,
                });
            } else {
                downs.push(*p);
            }
        }
        (GroundSpec { finite, ups, downs }, had)
    }

    pub(crate) fn ups(&self) -> &[Progression] {
        &self.ups
    }

    pub(crate) fn finite_part(&self) -> &BTreeSet<i64> {
        &self.finite
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odd_spec() -> GroundSpec {
        GroundSpec::from_parts([-2, -1], vec![Progression::new(1, 2).unwrap()])
    }

    #[test]
    fn members_examples() {
        let spec = GroundSpec::from_parts([-2, -1], vec![Progression::new(1, 2).unwrap()]);
        assert_eq!(spec.members_in(-3, 7), vec![-2, -1, 1, 3, 5, 7]);
        let spec = GroundSpec::finite_set([-4, 2]);
        assert_eq!(spec.members_in(0, 10), vec![2]);
        let spec = GroundSpec::finite_set([]);
        assert_eq!(spec.members_in(0, 5), Vec::<i64>::new());
    }

    #[test]
    fn condensed_and_parts() {
        assert!(odd_spec().is_condensed());
        assert!(GroundSpec::finite_set([0]).is_condensed());
        assert!(!GroundSpec::finite_set([1, 2]).is_condensed());
        assert_eq!(odd_spec().negatives().unwrap(), vec![-2, -1]);
        assert_eq!(odd_spec().min_positive(), Some(1));
        assert_eq!(odd_spec().max_negative(), Some(-1));
        assert_eq!(odd_spec().smallest_positive_ge(8), Some(9));
    }

    #[test]
    fn downward_rejected_by_standard_parser() {
        let v: serde_json::Value = serde_json::json!({
            "finite": [],
            "aps": [{"start": 1, "step": 1}],
            "downs": [{"start": -1, "step": 1}],
        });
        assert!(GroundSpec::from_json(&v).is_err());
        let spec = GroundSpec::from_json_two_sided(&v).unwrap();
        assert!(spec.negatives_infinite());
        assert!(spec.contains(-17) && spec.contains(17) && !spec.contains(0));
        assert_eq!(spec.largest_negative_le(-6), Some(-6));
    }

    #[test]
    fn json_roundtrip() {
        let spec = odd_spec();
        let j = spec.to_json();
        assert_eq!(GroundSpec::from_json(&j).unwrap(), spec);
    }

    #[test]
    fn strip_zero_splits_progressions() {
        let spec = GroundSpec::from_parts([-2, -1], vec![Progression::new(0, 2).unwrap()]);
        let (stripped, had) = spec.strip_zero();
        assert!(had);
        assert!(!stripped.contains(0));
        assert!(stripped.contains(2) && stripped.contains(100));
    }
}
