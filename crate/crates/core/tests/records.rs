use std::fs;

use abelmap_core::brace::{brace_from_abelian_map, BraceRecord};
use abelmap_core::maps::MapRecord;
use abelmap_core::perm::PermSubgroupRecord;
use abelmap_core::regular::build_n;
use abelmap_core::report::classify_group;
use abelmap_core::ybe::{map_solution, MapSolution, SolutionRecord};
use abelmap_core::{build_group, enumerate_abelian_maps};

#[test]
fn maps_reload_to_identical_subgroups() {
    let dir = tempfile::tempdir().unwrap();
    for spec in ["D:6", "S:4", "M:5:2"] {
        let maps = enumerate_abelian_maps(&build_group(spec).unwrap()).unwrap();
        let path = dir.path().join("maps.json");
        let records: Vec<MapRecord> = maps.iter().map(|m| m.to_record()).collect();
        fs::write(&path, serde_json::to_string(&records).unwrap()).unwrap();
        let back: Vec<MapRecord> = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        for (psi, rec) in maps.iter().zip(&back) {
            let again = rec.load().unwrap();
            assert_eq!(&again, psi);
            assert_eq!(build_n(&again).unwrap(), build_n(psi).unwrap());
        }
    }
}

#[test]
fn subgroup_records_round_trip() {
    let c = classify_group(&build_group("D:4").unwrap()).unwrap();
    for s in &c.subgroups {
        let json = serde_json::to_string(&s.subgroup.to_record(Some(s.type_label.clone()))).unwrap();
        let rec: PermSubgroupRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(rec.load().unwrap(), s.subgroup);
    }
}

#[test]
fn brace_and_solution_records_round_trip() {
    let grp = build_group("D:3").unwrap();
    for psi in enumerate_abelian_maps(&grp).unwrap() {
        let b = brace_from_abelian_map(&psi).unwrap();
        let rec: BraceRecord = serde_json::from_str(&serde_json::to_string(&b.to_record()).unwrap()).unwrap();
        assert!(rec.load().unwrap().same_tables(&b));

        let sol = map_solution(&psi, MapSolution::R3).unwrap();
        let text = serde_json::to_string(&sol.to_record()).unwrap();
        assert!(text.contains("\"R\""));
        let rec: SolutionRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(rec.load().unwrap().map(), sol.map());
    }
}

#[test]
fn corrupted_records_are_rejected() {
    let rec = MapRecord { group: "D:3".into(), images: vec![0, 1, 2, 3, 4, 5] };
    assert!(rec.load().is_err(), "the identity on D:3 is not abelian");
    let rec = MapRecord { group: "D:3".into(), images: vec![0; 4] };
    assert!(rec.load().is_err());
}
