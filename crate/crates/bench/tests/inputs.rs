use omega_bench::{sample_rays, sample_segments};
use omega_core::census::segment_root_count;
use omega_core::surface::{classify_region, RegionK};

#[test]
fn rays_cover_both_regions() {
    let regions: Vec<RegionK> = sample_rays().iter().map(|(_, r)| classify_region(r).unwrap()).collect();
    assert!(regions.contains(&RegionK::K1));
    assert!(regions.contains(&RegionK::K2));
}

#[test]
fn segments_are_valid_and_the_long_one_crosses() {
    for (name, p, q) in sample_segments() {
        let s = segment_root_count(&p, &q).unwrap();
        if name == "long" {
            assert_eq!(s.count, 1);
        }
    }
}
