use docmap_eval::report::ComparisonRow;
use docmap_eval::RecallTable;

const ORIGINAL: [f64; 11] = [
    0.4502, 0.3405, 0.2633, 0.2390, 0.2223, 0.2058, 0.1948, 0.1884, 0.1840, 0.1776, 0.1750,
];
const WITH_MAPS: [f64; 11] = [
    0.6632, 0.5659, 0.4683, 0.4307, 0.3847, 0.3611, 0.2915, 0.2512, 0.2325, 0.2061, 0.2033,
];

#[test]
fn percent_column_and_average_row() {
    let table = RecallTable::from_columns(&ORIGINAL, &WITH_MAPS);
    let increases: Vec<i64> = table.levels.iter().map(|l| l.row.increase.unwrap()).collect();
    assert_eq!(increases, vec![47, 66, 78, 80, 73, 75, 50, 33, 26, 16, 16]);
    assert_eq!(table.average.a, 0.2401);
    assert_eq!(table.average.b, 0.3690);
    assert_eq!(table.average.increase, Some(51));
}

#[test]
fn increase_of_column_means_would_not_give_fifty_one() {
    let a = ORIGINAL.iter().sum::<f64>() / 11.0;
    let b = WITH_MAPS.iter().sum::<f64>() / 11.0;
    assert_eq!(ComparisonRow::from_means(a, b).increase, Some(54));
}

#[test]
fn normalized_recall_improvement() {
    assert_eq!(ComparisonRow::from_means(0.5325, 0.6624).increase, Some(24));
}
