import pytest

from hurwitzdeg import parse_portrait

RABBIT_TEXT = """\
# degree-two portrait with one fixed critical point and a critical
# orbit of period three
degree=2
points=inf,z0,c1,c2
map=inf->inf,z0->c1,c1->c2,c2->z0
ram=inf:2,z0:2,c1:1,c2:1
branch=inf:(2),z0:(1,1),c1:(2),c2:(1,1)
"""

# degree-two portrait whose finite critical orbit lands on a two-cycle
PREPERIODIC_TEXT = """\
degree=2
points=inf,i,u,v
map=inf->inf,i->u,u->v,v->u
ram=inf:2,i:1,u:1,v:1
branch=inf:(2),i:(2),u:(1,1),v:(1,1)
"""

IDENTITY_TEXT = """\
degree=1
points=a,b,c,d
map=a->a,b->b,c->c,d->d
ram=a:1,b:1,c:1,d:1
branch=a:(1),b:(1),c:(1),d:(1)
"""

# degree-three portrait whose completion adds three interchangeable
# labels over one branch point: forgetful degree 3! = 6
BIGNU_TEXT = """\
degree=3
points=w,x,y,z
map=w->w,x->y,y->x,z->x
ram=w:3,x:2,y:2,z:1
branch=w:(3),x:(2,1),y:(2,1),z:(1,1,1)
"""

FIVE_POINT_TEXT = """\
degree=2
points=a,b,c,d,e
map=a->a,b->b,c->d,d->e,e->c
ram=a:2,b:2,c:1,d:1,e:1
branch=a:(2),b:(2),c:(1,1),d:(1,1),e:(1,1)
"""


@pytest.fixture
def rabbit():
    return parse_portrait(RABBIT_TEXT)


@pytest.fixture
def preperiodic():
    return parse_portrait(PREPERIODIC_TEXT)


@pytest.fixture
def identity_portrait():
    return parse_portrait(IDENTITY_TEXT)


@pytest.fixture
def bignu():
    return parse_portrait(BIGNU_TEXT)


@pytest.fixture
def five_point():
    return parse_portrait(FIVE_POINT_TEXT)
