use curveinv::catalog::{catalog, entry_by_id, table_entries, verify_entry, Table, ValueStatus};
use curveinv::invariants::Trunc;

#[test]
fn every_entry_verifies() {
    for e in catalog() {
        let r = verify_entry(&e, Trunc::default(), 0).unwrap_or_else(|err| panic!("{}: {}", e.id(), err));
        let bad: Vec<String> = r
            .values
            .iter()
            .filter(|v| v.status == ValueStatus::Fail)
            .map(|v| format!("{} expected {} got {}", v.name, v.expected, v.computed))
            .collect();
        assert!(r.ok(), "{}: {:?}", e.id(), bad);
    }
}

#[test]
fn discrepancies_only_where_annotated() {
    for e in catalog() {
        let r = verify_entry(&e, Trunc::default(), 0).unwrap();
        let flagged = r.values.iter().any(|v| v.status == ValueStatus::KnownDiscrepancy);
        assert_eq!(flagged, e.known_discrepancy.is_some(), "{}", e.id());
    }
}

#[test]
fn ids_resolve() {
    for t in [Table::Simple, Table::Asimple] {
        for e in table_entries(t, 3) {
            assert_eq!(entry_by_id(&e.id()).unwrap().id(), e.id());
        }
    }
}
