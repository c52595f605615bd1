//! Reference values computed with 50-digit arithmetic (mpmath).

/// `(x, dof, P(χ²_dof ≤ x))`
pub const CHISQ_CDF: [(f64, usize, f64); 100] = [
    (0.05, 1, 0.17693672624187853),
    (0.3, 1, 0.4161175792296348),
    (0.6, 1, 0.5614219739190002),
    (0.8, 1, 0.6289066304773024),
    (0.95, 1, 0.670280702687321),
    (1.0, 1, 0.6826894921370859),
    (1.05, 1, 0.6944929131387461),
    (1.2, 1, 0.7266783217077019),
    (1.5, 1, 0.7793286380801532),
    (2.5, 1, 0.886153701993342),
    (0.1, 2, 0.04877057549928599),
    (0.6, 2, 0.2591817793182821),
    (1.2, 2, 0.45118836390597356),
    (1.6, 2, 0.5506710358827784),
    (1.9, 2, 0.6132589765454988),
    (2.0, 2, 0.6321205588285577),
    (2.1, 2, 0.6500622508888446),
    (2.4, 2, 0.6988057880877979),
    (3.0, 2, 0.7768698398515702),
    (5.0, 2, 0.9179150013761012),
    (0.15000000000000002, 3, 0.01477394180564235),
    (0.8999999999999999, 3, 0.17457219095833923),
    (1.7999999999999998, 3, 0.38506506421746256),
    (2.4000000000000004, 3, 0.5063653772882721),
    (2.8499999999999996, 3, 0.5846649708372011),
    (3.0, 3, 0.608374823728911),
    (3.1500000000000004, 3, 0.6309286861552438),
    (3.5999999999999996, 3, 0.6919778284410066),
    (4.5, 3, 0.7877097126398667),
    (7.5, 3, 0.9424415480273636),
    (0.25, 5, 0.0015208185533684398),
    (1.5, 5, 0.08693018545560453),
    (3.0, 5, 0.3000141641213725),
    (4.0, 5, 0.4505840486472198),
    (4.75, 5, 0.5528540983604989),
    (5.0, 5, 0.5841198130044921),
    (5.25, 5, 0.6138620756627109),
    (6.0, 5, 0.6937810815867216),
    (7.5, 5, 0.8139701663971329),
    (12.5, 5, 0.9714568766738325),
    (0.5, 10, 6.611710561034247e-06),
    (3.0, 10, 0.018575936222140675),
    (6.0, 10, 0.18473675547622792),
    (8.0, 10, 0.37116306482012645),
    (9.5, 10, 0.5146024422214033),
    (10.0, 10, 0.5595067149347875),
    (10.5, 10, 0.6022263189237717),
    (12.0, 10, 0.7149434996833688),
    (15.0, 10, 0.8679381437122794),
    (25.0, 10, 0.9946544945128659),
    (2.45, 49, 1.442642112981642e-23),
    (14.7, 49, 4.871066570290475e-07),
    (29.4, 49, 0.01189971907942224),
    (39.2, 49, 0.15955007654426007),
    (46.55, 49, 0.42698919236015687),
    (49.0, 49, 0.5268717043452348),
    (51.45, 49, 0.621952257725966),
    (58.8, 49, 0.8406363566150528),
    (73.5, 49, 0.9866961945928167),
    (122.5, 49, 0.9999999683969124),
    (4.95, 99, 6.2573617707668225e-46),
    (29.7, 99, 1.1708619803084716e-12),
    (59.4, 99, 0.0005509169572310169),
    (79.2, 99, 0.071401482619786),
    (94.05, 99, 0.3781966258654092),
    (99.0, 99, 0.5189030875917361),
    (103.95, 99, 0.6529474292923284),
    (118.8, 99, 0.9145934930449982),
    (148.5, 99, 0.9990483560033127),
    (247.5, 99, 0.9999999999999896),
    (24.950000000000003, 499, 5.7026380570384955e-224),
    (149.7, 499, 8.858551226473828e-57),
    (299.4, 499, 6.09894329988411e-14),
    (399.20000000000005, 499, 0.0003666088369350569),
    (474.04999999999995, 499, 0.21706470122934396),
    (499.0, 499, 0.5084190506011774),
    (523.95, 499, 0.7875662000430503),
    (598.8, 499, 0.9986091342004562),
    (748.5, 499, 0.9999999999971826),
    (1247.5, 499, 1.0),
    (49.95, 999, 0.0),
    (299.7, 999, 1.1997063461557456e-111),
    (599.4, 999, 4.0263425748005267e-26),
    (799.2, 999, 8.20759669529887e-07),
    (949.05, 999, 0.1309984441342043),
    (999.0, 999, 0.5059501220414722),
    (1048.95, 999, 0.8674096042123414),
    (1198.8, 999, 0.9999876296523744),
    (1498.5, 999, 1.0),
    (2497.5, 999, 1.0),
    (499.95000000000005, 9999, 0.0),
    (2999.7, 9999, 0.0),
    (5999.4, 9999, 3.298646442318809e-243),
    (7999.200000000001, 9999, 1.578095684211722e-52),
    (9499.05, 9999, 0.00016449979283529202),
    (9999.0, 9999, 0.5018807280727808),
    (10498.95, 9999, 0.9997518917241839),
    (11998.8, 9999, 1.0),
    (14998.5, 9999, 1.0),
    (24997.5, 9999, 1.0),
];

/// `(h, sill, scale, nu, C(h))` for the Matérn covariance.
pub const MATERN: [(f64, f64, f64, f64, f64); 108] = [
    (0.001, 1.7, 1.0, 0.5, 1.6983008497167373),
    (0.3, 1.7, 1.0, 0.5, 1.2593909751589203),
    (1.0, 1.7, 1.0, 0.5, 0.6253950499914519),
    (1.9, 1.7, 1.0, 0.5, 0.2542666526784796),
    (2.0, 1.7, 1.0, 0.5, 0.23006998150224156),
    (2.1, 1.7, 1.0, 0.5, 0.20817592803006923),
    (5.0, 1.7, 1.0, 0.5, 0.011454509898445294),
    (12.0, 1.7, 1.0, 0.5, 1.0445161000657956e-05),
    (30.0, 1.7, 1.0, 0.5, 1.5907959047028298e-13),
    (0.007216878364870323, 1.7, 7.216878364870323, 0.5, 1.6983008497167373),
    (2.165063509461097, 1.7, 7.216878364870323, 0.5, 1.2593909751589203),
    (7.216878364870323, 1.7, 7.216878364870323, 0.5, 0.6253950499914519),
    (13.712068893253614, 1.7, 7.216878364870323, 0.5, 0.2542666526784796),
    (14.433756729740645, 1.7, 7.216878364870323, 0.5, 0.2300699815022416),
    (15.155444566227679, 1.7, 7.216878364870323, 0.5, 0.20817592803006923),
    (36.08439182435161, 1.7, 7.216878364870323, 0.5, 0.011454509898445302),
    (86.60254037844388, 1.7, 7.216878364870323, 0.5, 1.0445161000657951e-05),
    (216.50635094610968, 1.7, 7.216878364870323, 0.5, 1.5907959047028318e-13),
    (0.001, 1.7, 1.0, 1.0, 1.6999936048653455),
    (0.3, 1.7, 1.0, 1.0, 1.5585559370632358),
    (1.0, 1.7, 1.0, 1.0, 1.0232422913352988),
    (1.9, 1.7, 1.0, 1.0, 0.5157022942955164),
    (2.0, 1.7, 1.0, 1.0, 0.47554399817617626),
    (2.1, 1.7, 1.0, 1.0, 0.43820468917462324),
    (5.0, 1.7, 1.0, 1.0, 0.03437921428634339),
    (12.0, 1.7, 1.0, 1.0, 4.673145228125063e-05),
    (30.0, 1.7, 1.0, 1.0, 1.1055433209646901e-12),
    (0.007216878364870323, 1.7, 7.216878364870323, 1.0, 1.6999936048653455),
    (2.165063509461097, 1.7, 7.216878364870323, 1.0, 1.5585559370632356),
    (7.216878364870323, 1.7, 7.216878364870323, 1.0, 1.0232422913352988),
    (13.712068893253614, 1.7, 7.216878364870323, 1.0, 0.5157022942955164),
    (14.433756729740645, 1.7, 7.216878364870323, 1.0, 0.4755439981761763),
    (15.155444566227679, 1.7, 7.216878364870323, 1.0, 0.4382046891746232),
    (36.08439182435161, 1.7, 7.216878364870323, 1.0, 0.03437921428634342),
    (86.60254037844388, 1.7, 7.216878364870323, 1.0, 4.67314522812506e-05),
    (216.50635094610968, 1.7, 7.216878364870323, 1.0, 1.1055433209646917e-12),
    (0.001, 1.7, 1.0, 1.5, 1.6999991505664542),
    (0.3, 1.7, 1.0, 1.5, 1.6372082677065964),
    (1.0, 1.7, 1.0, 1.5, 1.2507900999829038),
    (1.9, 1.7, 1.0, 1.5, 0.7373732927675908),
    (2.0, 1.7, 1.0, 1.5, 0.6902099445067247),
    (2.1, 1.7, 1.0, 1.5, 0.6453453768932147),
    (5.0, 1.7, 1.0, 1.5, 0.06872705939067177),
    (12.0, 1.7, 1.0, 1.5, 0.00013578709300855342),
    (30.0, 1.7, 1.0, 1.5, 4.931467304578772e-12),
    (0.007216878364870323, 1.7, 7.216878364870323, 1.5, 1.6999991505664542),
    (2.165063509461097, 1.7, 7.216878364870323, 1.5, 1.6372082677065964),
    (7.216878364870323, 1.7, 7.216878364870323, 1.5, 1.2507900999829038),
    (13.712068893253614, 1.7, 7.216878364870323, 1.5, 0.7373732927675908),
    (14.433756729740645, 1.7, 7.216878364870323, 1.5, 0.6902099445067248),
    (15.155444566227679, 1.7, 7.216878364870323, 1.5, 0.6453453768932146),
    (36.08439182435161, 1.7, 7.216878364870323, 1.5, 0.06872705939067181),
    (86.60254037844388, 1.7, 7.216878364870323, 1.5, 0.00013578709300855337),
    (216.50635094610968, 1.7, 7.216878364870323, 1.5, 4.931467304578778e-12),
    (0.001, 1.7, 1.0, 2.0, 1.6999995750008259),
    (0.3, 1.7, 1.0, 2.0, 1.6635491316948745),
    (1.0, 1.7, 1.0, 2.0, 1.3811130638399007),
    (1.9, 1.7, 1.0, 2.0, 0.9110661817040681),
    (2.0, 1.7, 1.0, 2.0, 0.8627831655245899),
    (2.1, 1.7, 1.0, 2.0, 0.8159925419006643),
    (5.0, 1.7, 1.0, 2.0, 0.11281505388474852),
    (12.0, 1.7, 1.0, 2.0, 0.00031611248091217717),
    (30.0, 1.7, 1.0, 2.0, 1.741899616890707e-11),
    (0.007216878364870323, 1.7, 7.216878364870323, 2.0, 1.6999995750008259),
    (2.165063509461097, 1.7, 7.216878364870323, 2.0, 1.6635491316948745),
    (7.216878364870323, 1.7, 7.216878364870323, 2.0, 1.3811130638399007),
    (13.712068893253614, 1.7, 7.216878364870323, 2.0, 0.9110661817040681),
    (14.433756729740645, 1.7, 7.216878364870323, 2.0, 0.86278316552459),
    (15.155444566227679, 1.7, 7.216878364870323, 2.0, 0.8159925419006643),
    (36.08439182435161, 1.7, 7.216878364870323, 2.0, 0.11281505388474858),
    (86.60254037844388, 1.7, 7.216878364870323, 2.0, 0.000316112480912177),
    (216.50635094610968, 1.7, 7.216878364870323, 2.0, 1.7418996168907094e-11),
    (0.001, 1.7, 1.0, 2.5, 1.6999997166667373),
    (0.3, 1.7, 1.0, 2.5, 1.674989996961364),
    (1.0, 1.7, 1.0, 2.5, 1.4592551166467211),
    (1.9, 1.7, 1.0, 2.5, 1.0433408314906945),
    (2.0, 1.7, 1.0, 2.5, 0.9969699198430468),
    (2.1, 1.7, 1.0, 2.5, 0.9513639910974164),
    (5.0, 1.7, 1.0, 2.5, 0.16418130854438254),
    (12.0, 1.7, 1.0, 2.5, 0.0006371548210401353),
    (30.0, 1.7, 1.0, 2.5, 5.265534444566366e-11),
    (0.007216878364870323, 1.7, 7.216878364870323, 2.5, 1.6999997166667373),
    (2.165063509461097, 1.7, 7.216878364870323, 2.5, 1.674989996961364),
    (7.216878364870323, 1.7, 7.216878364870323, 2.5, 1.4592551166467211),
    (13.712068893253614, 1.7, 7.216878364870323, 2.5, 1.0433408314906945),
    (14.433756729740645, 1.7, 7.216878364870323, 2.5, 0.9969699198430468),
    (15.155444566227679, 1.7, 7.216878364870323, 2.5, 0.9513639910974164),
    (36.08439182435161, 1.7, 7.216878364870323, 2.5, 0.16418130854438262),
    (86.60254037844388, 1.7, 7.216878364870323, 2.5, 0.000637154821040135),
    (216.50635094610968, 1.7, 7.216878364870323, 2.5, 5.265534444566373e-11),
    (0.001, 1.7, 1.0, 3.0, 1.6999997875000266),
    (0.3, 1.7, 1.0, 3.0, 1.6810828859868359),
    (1.0, 1.7, 1.0, 3.0, 1.509018350256813),
    (1.9, 1.7, 1.0, 3.0, 1.14377684200492),
    (2.0, 1.7, 1.0, 3.0, 1.100555164612678),
    (2.1, 1.7, 1.0, 3.0, 1.0575528768081754),
    (5.0, 1.7, 1.0, 3.0, 0.22025009852957164),
    (12.0, 1.7, 1.0, 3.0, 0.0011572786219746884),
    (30.0, 1.7, 1.0, 3.0, 1.4179261977743472e-10),
    (0.007216878364870323, 1.7, 7.216878364870323, 3.0, 1.6999997875000266),
    (2.165063509461097, 1.7, 7.216878364870323, 3.0, 1.6810828859868359),
    (7.216878364870323, 1.7, 7.216878364870323, 3.0, 1.509018350256813),
    (13.712068893253614, 1.7, 7.216878364870323, 3.0, 1.1437768420049197),
    (14.433756729740645, 1.7, 7.216878364870323, 3.0, 1.100555164612678),
    (15.155444566227679, 1.7, 7.216878364870323, 3.0, 1.0575528768081752),
    (36.08439182435161, 1.7, 7.216878364870323, 3.0, 0.22025009852957173),
    (86.60254037844388, 1.7, 7.216878364870323, 3.0, 0.001157278621974688),
    (216.50635094610968, 1.7, 7.216878364870323, 3.0, 1.417926197774349e-10),
];
