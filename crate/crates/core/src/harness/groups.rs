//! Named groups used by the verification suites and accepted by the CLI.

use crate::classify::CATALOG_SOURCE;
use crate::group::{realize_text, with_c2_factors, FiniteGroup, GroupError, DEFAULT_COSET_LIMIT};

pub const Q8: &str = "<a,b | a^4=1, b^2=a^2, b^-1*a*b=a^-1>";
pub const Q8_C2: &str = "<a,b,e | a^4=1, b^2=a^2, b^-1*a*b=a^-1, e^2=1, ae=ea, be=eb>";
pub const D4: &str = "<r,s | r^4, s^2, (rs)^2>";
pub const G16_3: &str = "<g,h | g^4=h^4=(gh)^2=(gh^-1)^2=1>";
pub const S3: &str = "<a,b | a^3, b^2, (ab)^2>";

/// Short names accepted wherever a group is expected.
pub fn named_presentation(name: &str) -> Option<&'static str> {
    let key = name.trim();
    let fixed = match key.to_ascii_uppercase().as_str() {
        "Q8" => Some(Q8),
        "Q8XC2" => Some(Q8_C2),
        "D4" => Some(D4),
        "S3" => Some(S3),
        "G[16,3]" => Some(G16_3),
        _ => None,
    };
    fixed.or_else(|| {
        CATALOG_SOURCE
            .iter()
            .find(|(label, ..)| label.eq_ignore_ascii_case(key))
            .map(|&(_, p, ..)| p)
    })
}

pub fn named_group(name: &str) -> Option<Result<FiniteGroup, GroupError>> {
    named_presentation(name).map(|p| realize_text(p, DEFAULT_COSET_LIMIT))
}

/// Where a census group comes from; only 2-group families enter the
/// ring-class findings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Catalog,
    Hamiltonian,
    Other,
    Control,
}

#[derive(Debug, Clone)]
pub struct CensusGroup {
    pub label: String,
    pub base: &'static str,
    pub rank: u32,
    pub family: Family,
    pub group: FiniteGroup,
}

/// Base groups of the census, in report order.
pub fn census_bases() -> Vec<(&'static str, &'static str, Family)> {
    let mut out: Vec<(&'static str, &'static str, Family)> = CATALOG_SOURCE
        .iter()
        .map(|&(label, p, ..)| (label, p, Family::Catalog))
        .collect();
    out.push(("Q8", Q8, Family::Hamiltonian));
    out.push(("Q8xC2", Q8_C2, Family::Hamiltonian));
    out.push(("D4", D4, Family::Other));
    out.push(("G[16,3]", G16_3, Family::Other));
    out.push(("S3", S3, Family::Control));
    out
}

/// Every base times `C2^r` for `r` in `0..=max_rank`.
pub fn census_groups(max_rank: u32) -> Result<Vec<CensusGroup>, GroupError> {
    let mut out = Vec::new();
    for (label, presentation, family) in census_bases() {
        let base = realize_text(presentation, DEFAULT_COSET_LIMIT)?;
        for rank in 0..=max_rank {
            let group = with_c2_factors(&base, rank)?;
            let label = if rank == 0 {
                label.to_string()
            } else {
                format!("{label}xC2^{rank}")
            };
            out.push(CensusGroup {
                label,
                base: presentation,
                rank,
                family,
                group,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        assert_eq!(named_group("q8").unwrap().unwrap().order(), 8);
        assert_eq!(named_group("Q8xC2").unwrap().unwrap().order(), 16);
        assert_eq!(named_group("G[16,3]").unwrap().unwrap().order(), 16);
        assert_eq!(named_group("g[32,30]").unwrap().unwrap().order(), 32);
        assert!(named_group("G[64,1]").is_none());
    }

    #[test]
    fn census_group_orders() {
        let gs = census_groups(1).unwrap();
        assert_eq!(gs.len(), census_bases().len() * 2);
        let g = gs.iter().find(|g| g.label == "G[32,24]xC2^1").unwrap();
        assert_eq!(g.group.order(), 64);
        let s3 = gs.iter().find(|g| g.label == "S3").unwrap();
        assert_eq!(s3.family, Family::Control);
        assert!(!s3.group.is_2group());
    }
}
